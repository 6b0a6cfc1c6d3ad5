#include "scseg/dictionary.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace scseg {

std::vector<FrequencyPair> zigzag_frequencies(int count, int limit) {
    std::vector<FrequencyPair> out;
    if (count <= 0) return out;
    out.reserve(static_cast<std::size_t>(count));
    const int max_diag = limit > 0 ? 2 * (limit - 1) : count;
    for (int d = 0; d <= max_diag && static_cast<int>(out.size()) < count; ++d) {
        for (int i = 0; i <= d && static_cast<int>(out.size()) < count; ++i) {
            const int u = (d % 2 == 1) ? i : d - i;
            const int v = d - u;
            if (limit > 0 && (u >= limit || v >= limit)) continue;
            out.push_back({u, v});
        }
    }
    return out;
}

double basis_value(int u, int v, int x, int y, int n) {
    const double nn = static_cast<double>(n);
    const double beta_u = std::sqrt((u == 0 ? 1.0 : 2.0) / nn);
    const double beta_v = std::sqrt((v == 0 ? 1.0 : 2.0) / nn);
    const double pi = std::numbers::pi;
    return beta_u * beta_v * std::cos((2 * x + 1) * pi * u / (2 * nn)) *
           std::cos((2 * y + 1) * pi * v / (2 * nn));
}

Dictionary build_dictionary(int n, int k) {
    if (n < 1) throw std::invalid_argument("build_dictionary: block size must be positive");
    if (k < 1 || static_cast<long>(k) > static_cast<long>(n) * n)
        throw std::invalid_argument("build_dictionary: need 1 <= K <= N^2");

    Dictionary dict;
    dict.block_size = n;
    dict.num_bases = k;
    dict.freq_pairs = zigzag_frequencies(k, n);
    dict.matrix.resize(static_cast<Eigen::Index>(n) * n, k);
    for (int c = 0; c < k; ++c) {
        const auto [u, v] = dict.freq_pairs[static_cast<std::size_t>(c)];
        Eigen::Index row = 0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) dict.matrix(row++, c) = basis_value(u, v, x, y, n);
    }
    const Eigen::MatrixXd gram = dict.matrix.transpose() * dict.matrix;
    dict.projector = gram.ldlt().solve(dict.matrix.transpose());
    return dict;
}

std::shared_ptr<const Dictionary> cached_dictionary(int n, int k) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::shared_ptr<const Dictionary>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{n, k}];
    if (!slot) slot = std::make_shared<const Dictionary>(build_dictionary(n, k));
    return slot;
}

}  // namespace scseg
