#include "essnorm/random.hpp"

#include <stdexcept>

namespace essnorm {

std::vector<double> random_masses(Rng& rng, std::size_t n, double lo, double hi)
{
    std::vector<double> m(n);
    for (auto& v : m) v = rng.uniform(lo, hi);
    return m;
}

MatrixOperator random_matrix(Rng& rng, const SpacePtr& space)
{
    const auto n = space->dimension();
    std::vector<double> a(n * n);
    for (auto& v : a) v = rng.symmetric();
    return {space, std::move(a)};
}

Partition random_two_blocks(Rng& rng, std::size_t n)
{
    if (n < 2) throw std::invalid_argument("random_two_blocks: need at least two coordinates");
    Partition blocks(2);
    for (std::size_t i = 0; i < n; ++i) blocks[rng.below(2)].push_back(i);
    // force both nonempty by moving one index over
    if (blocks[0].empty()) {
        blocks[0].push_back(blocks[1].back());
        blocks[1].pop_back();
    }
    else if (blocks[1].empty()) {
        blocks[1].push_back(blocks[0].back());
        blocks[0].pop_back();
    }
    return blocks;
}

FunctionKernel random_smooth_kernel(Rng& rng, int rank, int terms)
{
    FunctionKernel k;
    for (int r = 0; r < rank; ++r) {
        std::vector<double> ce(terms), cg(terms);
        for (auto& c : ce) c = rng.symmetric();
        for (auto& c : cg) c = rng.symmetric();
        k.terms.emplace_back(CellFunction::cosine_series(std::move(ce)), CellFunction::cosine_series(std::move(cg)));
    }
    return k;
}

} // namespace essnorm
