#pragma once

// Shared helpers for the test programs: fixture loading, random complexes
// and small independent oracles (plain Gaussian elimination over machine
// integers) used to cross-check the library's exact algorithms.

#include "matk/error.hpp"
#include "matk/io.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace matk::testing {

inline std::filesystem::path fixture_path(const std::string& name) { return std::filesystem::path(MATK_FIXTURES) / name; }

inline ComplexPtr fixture_complex(const std::string& name)
{
    return make_complex(complex_from_json(read_json_file(fixture_path(name))));
}

inline std::vector<CohomologyClass> fixture_classes(const ComplexPtr& k, const std::string& name, const Ring& ring)
{
    std::vector<CohomologyClass> out;
    for (auto& c : cochains_from_json(k, read_json_file(fixture_path(name)), ring))
        out.emplace_back(std::move(c));
    return out;
}

inline JoinMasseySpec fixture_spec(const std::string& name, const Ring& ring)
{
    const auto path = fixture_path(name);
    return join_spec_from_json(read_json_file(path), path.parent_path(), ring);
}

inline std::vector<std::string> numeric_labels(int m)
{
    std::vector<std::string> out;
    for (int i = 0; i < m; ++i)
        out.push_back(std::to_string(i + 1));
    return out;
}

/** A random complex on m vertices with up to `max_facets` facets of size <= max_size. */
inline SimplicialComplex random_complex(std::mt19937& rng, int m, int max_facets = 6, int max_size = 4)
{
    std::vector<VertexSet> facets;
    const int nf = 1 + static_cast<int>(rng() % max_facets);
    for (int f = 0; f < nf; ++f)
    {
        VertexSet s;
        for (int v = 0; v < m; ++v)
            if (rng() % 2)
                s = s.with(v);
        while (s.size() > max_size)
            s = s.without(s.ranks()[rng() % s.size()]);
        if (s.empty())
            s = s.with(static_cast<int>(rng() % m));
        facets.push_back(s);
    }
    return SimplicialComplex(numeric_labels(m), facets);
}

inline VertexSet random_subset(std::mt19937& rng, VertexSet from)
{
    VertexSet out;
    from.for_each([&](int v) {
        if (rng() % 2)
            out = out.with(v);
    });
    return out;
}

inline Cochain random_cochain(std::mt19937& rng, const ComplexPtr& k, VertexSet J, int p, const Ring& ring)
{
    Cochain c(k, J, p, ring);
    for (VertexSet s : k->faces_in(J, p))
        if (rng() % 2)
            c.add(s, Scalar(static_cast<int>(rng() % 7) - 3));
    return c;
}

inline Chain random_chain(std::mt19937& rng, const ComplexPtr& k, VertexSet J, int p, const Ring& ring)
{
    Chain c(k, J, p, ring);
    for (VertexSet s : k->faces_in(J, p))
        if (rng() % 2)
            c.add(s, Scalar(static_cast<int>(rng() % 7) - 3));
    return c;
}

// ------------------------------------------------------------------ //
//           Independent oracle: homology by machine arithmetic        //
// ------------------------------------------------------------------ //

namespace oracle {

using IntMatrix = std::vector<std::vector<long long>>;

/** All faces (including ∅) generated from the facet list by subset enumeration. */
inline std::vector<std::vector<std::uint64_t>> faces_by_dim(const std::vector<std::uint64_t>& facets, std::uint64_t J)
{
    std::vector<std::uint64_t> all;
    for (std::uint64_t f : facets)
    {
        const std::uint64_t g = f & J;
        for (std::uint64_t s = g;; s = (s - 1) & g)
        {
            all.push_back(s);
            if (s == 0)
                break;
        }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<std::vector<std::uint64_t>> by_dim;
    for (std::uint64_t s : all)
    {
        const std::size_t d = static_cast<std::size_t>(__builtin_popcountll(s));
        if (by_dim.size() <= d)
            by_dim.resize(d + 1);
        by_dim[d].push_back(s);
    }
    return by_dim;  // by_dim[d] = (d-1)-faces
}

/** Boundary matrix from (d)-element faces to (d-1)-element faces with alternating signs. */
inline IntMatrix boundary(const std::vector<std::uint64_t>& rows, const std::vector<std::uint64_t>& cols)
{
    IntMatrix m(rows.size(), std::vector<long long>(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c)
    {
        int pos = 0;
        for (int v = 0; v < 64; ++v)
            if (cols[c] >> v & 1)
            {
                const std::uint64_t face = cols[c] & ~(std::uint64_t{1} << v);
                const auto it = std::lower_bound(rows.begin(), rows.end(), face);
                m[static_cast<std::size_t>(it - rows.begin())][c] = (pos % 2 == 0) ? 1 : -1;
                ++pos;
            }
    }
    return m;
}

inline long long mod(long long a, long long p) { return ((a % p) + p) % p; }

inline long long inverse_mod(long long a, long long p)
{
    long long r = 1, b = mod(a, p), e = p - 2;
    while (e > 0)
    {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

/** Rank over F_p (p prime) or over Q (p = 0, using a large prime). */
inline std::size_t rank_mod(IntMatrix m, long long p)
{
    if (p == 0)
        p = 1000000007;  // rank over Q agrees for these small entries
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c)
    {
        std::size_t piv = rank;
        while (piv < rows && mod(m[piv][c], p) == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(m[piv], m[rank]);
        const long long inv = inverse_mod(m[rank][c], p);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && mod(m[r][c], p) != 0)
            {
                const long long f = mod(m[r][c], p) * inv % p;
                for (std::size_t cc = c; cc < cols; ++cc)
                    m[r][cc] = mod(m[r][cc] - f * mod(m[rank][cc], p), p);
            }
        ++rank;
    }
    return rank;
}

/** Reduced Betti numbers β̃_{-1}, ..., β̃_{top} of K_J over F_p (p = 0: over Q). */
inline std::vector<std::size_t> reduced_betti(const SimplicialComplex& k, VertexSet J, long long p)
{
    std::vector<std::uint64_t> facets;
    for (VertexSet f : k.facets())
        facets.push_back(f.bits());
    const auto by = faces_by_dim(facets, J.bits());
    std::vector<std::size_t> ranks(by.size() + 1, 0);  // ranks[d] = rank of ∂ from d-element to (d-1)-element faces
    for (std::size_t d = 1; d < by.size(); ++d)
        ranks[d] = rank_mod(boundary(by[d - 1], by[d]), p);
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < by.size(); ++d)
        out.push_back(by[d].size() - ranks[d] - ranks[d + 1]);
    return out;  // out[d] = β̃_{d-1}
}

/** Betti numbers of Z_K by summing the oracle Betti numbers of every full subcomplex. */
inline std::map<int, std::size_t> moment_angle_betti(const SimplicialComplex& k, long long p)
{
    std::map<int, std::size_t> out;
    const int m = k.num_vertices();
    for (std::uint64_t J = 0; J < (std::uint64_t{1} << m); ++J)
    {
        const auto b = reduced_betti(k, VertexSet(J), p);
        for (std::size_t d = 0; d < b.size(); ++d)
            if (b[d] != 0)
                out[static_cast<int>(d) - 1 + __builtin_popcountll(J) + 1] += b[d];
    }
    return out;
}

}  // namespace oracle

}  // namespace matk::testing

namespace matk::testing {

// ------------------------------------------------------------------ //
//                     Random matrices and joins                       //
// ------------------------------------------------------------------ //

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int spread = 5)
{
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = static_cast<long>(rng() % (2 * spread + 1)) - spread;
    return m;
}

/** Random unimodular matrix: a product of elementary integer operations. */
inline Matrix random_unimodular(std::mt19937& rng, std::size_t n)
{
    Matrix u = Matrix::identity(n);
    const Ring z = Ring::integers();
    for (int step = 0; step < 6 && n > 1; ++step)
    {
        Matrix e = Matrix::identity(n);
        const std::size_t i = rng() % n, j = (i + 1 + rng() % (n - 1)) % n;
        e(i, j) = static_cast<long>(rng() % 5) - 2;
        u = multiply(u, e, z);
    }
    return u;
}

inline oracle::IntMatrix to_int(const Matrix& m)
{
    oracle::IntMatrix out(m.rows(), std::vector<long long>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[r][c] = m(r, c).get_num().get_si();
    return out;
}

/**
 * A random join spec: n factors on 2-4 vertices with disjoint labels, each
 * carrying a random generator of its top non-vanishing reduced cohomology.
 */
inline std::optional<JoinMasseySpec> random_join_spec(std::mt19937& rng, int n, const Ring& ring)
{
    JoinMasseySpec spec;
    for (int i = 0; i < n; ++i)
    {
        const int m = 2 + static_cast<int>(rng() % 3);
        std::vector<std::string> labels;
        for (int v = 0; v < m; ++v)
            labels.push_back("f" + std::to_string(i + 1) + "_" + std::to_string(v + 1));
        auto k = make_complex(SimplicialComplex(labels, random_complex(rng, m, 3, 2).facets()));
        std::optional<Cochain> rep;
        for (int p = k->dimension(); p >= 0 && !rep; --p)
        {
            const CohomologyBasis h = reduced_cohomology(k, k->all_vertices(), p, ring);
            const auto& reps = h.class_representatives();
            if (!reps.empty() && h.group().free_rank > 0)
                rep = reps[rng() % reps.size()];
        }
        if (!rep)
            return std::nullopt;
        spec.factors.push_back(k);
        spec.classes.push_back(*rep);
    }
    return spec;
}

/**
 * Stretch vertex `v` of `k` into an edge {v, v'}: faces avoiding v are kept
 * and every face through v is coned off by v'.  Contracting {v, v'} recovers
 * k and the link condition holds by construction.
 */
inline VertexMap clone_stretch(const ComplexPtr& k, int v)
{
    std::vector<std::string> labels = k->labels();
    labels.insert(labels.begin() + v + 1, k->label(v) + "'");
    const auto shift = [&](VertexSet s) {
        VertexSet out;
        s.for_each([&](int r) { out = out.with(r <= v ? r : r + 1); });
        return out;
    };
    std::vector<VertexSet> facets;
    for (VertexSet f : k->facets())
        facets.push_back(f.contains(v) ? shift(f).with(v + 1) : shift(f));
    auto stretched = make_complex(SimplicialComplex(labels, facets));
    std::vector<int> image;
    for (int r = 0; r < stretched->num_vertices(); ++r)
        image.push_back(r <= v ? r : r - 1);
    return VertexMap{stretched, k, image};
}

/** Code of the matk::Error thrown by f, or "" when nothing is thrown. */
template <typename F>
std::string error_code(F&& f)
{
    try
    {
        f();
    }
    catch (const Error& e)
    {
        return e.code();
    }
    return "";
}

}  // namespace matk::testing
