#pragma once

#include <memory>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace scseg {

struct FrequencyPair {
    int u = 0;  // horizontal frequency (varies with x)
    int v = 0;  // vertical frequency (varies with y)
    bool operator==(const FrequencyPair&) const = default;
};

/// First `count` (u,v) pairs of the zig-zag scan: anti-diagonals u+v = 0,1,2,... with
/// odd diagonals walked by increasing u and even ones by decreasing u, so (0,1) precedes (1,0).
/// When `limit` > 0 only pairs with u,v < limit are produced.
std::vector<FrequencyPair> zigzag_frequencies(int count, int limit = 0);

/// Orthonormal 2-D DCT-II basis function of frequency (u,v) evaluated at pixel (x,y) of an NxN block.
double basis_value(int u, int v, int x, int y, int n);

/// N^2 x K matrix of vectorized low-frequency cosine bases.
struct Dictionary {
    int block_size = 0;
    int num_bases = 0;
    Eigen::MatrixXd matrix;                 // column k = vectorized basis for freq_pairs[k]
    Eigen::MatrixXd projector;              // (P^T P)^{-1} P^T, K x N^2
    std::vector<FrequencyPair> freq_pairs;

    Eigen::Index signal_length() const { return matrix.rows(); }
};

/// Throws std::invalid_argument unless 1 <= k <= n^2 and n >= 1.
Dictionary build_dictionary(int n, int k);

/// Process-wide cache keyed on (n, k); safe under concurrent first access.
std::shared_ptr<const Dictionary> cached_dictionary(int n, int k);

}  // namespace scseg
