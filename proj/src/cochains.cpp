#include "matk/cochains.hpp"

#include "matk/error.hpp"

#include <unordered_map>

namespace matk {

// ------------------------------------------------------------------ //
//                          Graded<Tag> members                       //
// ------------------------------------------------------------------ //

template <typename Tag>
void Graded<Tag>::add(VertexSet sigma, const Scalar& c)
{
    if (sigma.size() != p_ + 1 || !J_.contains(sigma))
        throw Error("GradingMismatch", "simplex does not have the cochain's degree or leaves J");
    if (!complex_->is_face(sigma))
        throw Error("SimplexNotInComplex", "support simplex is not a face of K_J");
    Scalar v = ring_.normalize(c);
    if (sgn(v) == 0)
        return;
    auto it = terms_.find(sigma);
    if (it == terms_.end())
    {
        terms_.emplace(sigma, v);
        return;
    }
    it->second = ring_.add(it->second, v);
    if (sgn(it->second) == 0)
        terms_.erase(it);
}

template <typename Tag>
void Graded<Tag>::set(VertexSet sigma, const Scalar& c)
{
    terms_.erase(sigma);
    add(sigma, c);
}

template <typename Tag>
bool Graded<Tag>::same_grading(const Graded& other) const
{
    return J_ == other.J_ && p_ == other.p_ && ring_ == other.ring_ &&
           (complex_ == other.complex_ || *complex_ == *other.complex_);
}

template <typename Tag>
void Graded<Tag>::check_compatible(const Graded& other) const
{
    if (!same_grading(other))
        throw Error("GradingMismatch", "operands live in different (K, J, p, ring) gradings");
}

template <typename Tag>
Graded<Tag>& Graded<Tag>::operator+=(const Graded& other)
{
    check_compatible(other);
    for (const auto& [s, c] : other.terms_)
        add(s, c);
    return *this;
}

template <typename Tag>
Graded<Tag>& Graded<Tag>::operator-=(const Graded& other)
{
    check_compatible(other);
    for (const auto& [s, c] : other.terms_)
        add(s, ring_.neg(c));
    return *this;
}

template <typename Tag>
Graded<Tag> Graded<Tag>::operator+(const Graded& other) const
{
    Graded r = *this;
    r += other;
    return r;
}

template <typename Tag>
Graded<Tag> Graded<Tag>::operator-(const Graded& other) const
{
    Graded r = *this;
    r -= other;
    return r;
}

template <typename Tag>
Graded<Tag> Graded<Tag>::operator-() const
{
    return scaled(Scalar(-1));
}

template <typename Tag>
Graded<Tag> Graded<Tag>::scaled(const Scalar& c) const
{
    Graded r = zero_like();
    Scalar nc = ring_.normalize(c);
    if (sgn(nc) == 0)
        return r;
    for (const auto& [s, v] : terms_)
    {
        Scalar x = ring_.mul(v, nc);
        if (sgn(x) != 0)
            r.terms_.emplace_hint(r.terms_.end(), s, x);
    }
    return r;
}

template <typename Tag>
bool Graded<Tag>::operator==(const Graded& other) const
{
    return same_grading(other) && terms_ == other.terms_;
}

template class Graded<CochainTag>;
template class Graded<ChainTag>;

// ------------------------------------------------------------------ //
//                               Signs                                //
// ------------------------------------------------------------------ //

int epsilon(int j, VertexSet J)
{
    if (!J.contains(j))
        throw Error("VertexNotInSet", "epsilon needs j in J");
    return J.count_below(j) % 2 == 0 ? 1 : -1;
}

int epsilon(VertexSet L, VertexSet J)
{
    if (!J.contains(L))
        throw Error("VertexNotInSet", "epsilon needs L inside J");
    int parity = 0;
    L.for_each([&](int j) { parity += J.count_below(j); });
    return parity % 2 == 0 ? 1 : -1;
}

namespace {

void require_same_ambient(const ComplexPtr& a, const ComplexPtr& b, const Ring& ra, const Ring& rb)
{
    if (!(ra == rb) || !(a == b || *a == *b))
        throw Error("AmbientMismatch", "operands belong to different complexes or rings");
}

}  // namespace

// ------------------------------------------------------------------ //
//                       Coboundary and boundary                      //
// ------------------------------------------------------------------ //

Cochain coboundary(const Cochain& a)
{
    const SimplicialComplex& k = *a.complex();
    const Ring& ring = a.ring();
    Cochain out(a.complex(), a.J(), a.degree() + 1, ring);
    for (const auto& [sigma, c] : a.terms())
    {
        (a.J() - sigma).for_each([&](int j) {
            VertexSet tau = sigma.with(j);
            if (k.is_face(tau))
                out.add(tau, epsilon(j, tau) > 0 ? c : ring.neg(c));
        });
    }
    return out;
}

Chain boundary(const Chain& x)
{
    const Ring& ring = x.ring();
    Chain out(x.complex(), x.J(), x.degree() - 1, ring);
    if (x.degree() < 0)
        return out;
    for (const auto& [sigma, c] : x.terms())
        sigma.for_each([&](int v) { out.add(sigma.without(v), epsilon(v, sigma) > 0 ? c : ring.neg(c)); });
    return out;
}

// ------------------------------------------------------------------ //
//                              Products                              //
// ------------------------------------------------------------------ //

Cochain cup_multiply(const Cochain& a, const Cochain& b)
{
    require_same_ambient(a.complex(), b.complex(), a.ring(), b.ring());
    const SimplicialComplex& k = *a.complex();
    const Ring& ring = a.ring();
    const VertexSet I = a.J(), J = b.J(), IJ = I | J;
    Cochain out(a.complex(), IJ, a.degree() + b.degree() + 1, ring);
    if (I.intersects(J))
        return out;
    for (const auto& [L, x] : a.terms())
        for (const auto& [M, y] : b.terms())
        {
            const VertexSet U = L | M;
            if (!k.is_face(U))
                continue;
            int sign = epsilon(L, I) * epsilon(M, J) * epsilon(U, IJ);
            // ζ = Π_{k ∈ I∖L} ε(k, k ∪ (J∖M))
            const VertexSet rest = J - M;
            int zeta_parity = 0;
            (I - L).for_each([&](int v) { zeta_parity += rest.count_below(v); });
            if (zeta_parity % 2 != 0)
                sign = -sign;
            Scalar c = ring.mul(x, y);
            out.add(U, sign > 0 ? c : ring.neg(c));
        }
    return out;
}

Cochain cup_multiply_ordered(const Cochain& a, const Cochain& b)
{
    require_same_ambient(a.complex(), b.complex(), a.ring(), b.ring());
    const VertexSet I = a.J(), J = b.J();
    if (!I.empty() && !J.empty() && I.max() >= J.min())
        throw Error("OrderViolation", "every vertex of I must precede every vertex of J");
    const SimplicialComplex& k = *a.complex();
    const Ring& ring = a.ring();
    Cochain out(a.complex(), I | J, a.degree() + b.degree() + 1, ring);
    const bool negate = (I.size() * (b.degree() + 1)) % 2 != 0;
    for (const auto& [L, x] : a.terms())
        for (const auto& [M, y] : b.terms())
        {
            const VertexSet U = L | M;
            if (!k.is_face(U))
                continue;
            Scalar c = ring.mul(x, y);
            out.add(U, negate ? ring.neg(c) : c);
        }
    return out;
}

Cochain bar(const Cochain& a)
{
    return (a.degree() + a.J().size()) % 2 == 0 ? a : -a;
}

Scalar evaluate(const Cochain& a, const Chain& x)
{
    if (a.J() != x.J() || a.degree() != x.degree() || !(a.ring() == x.ring()))
        throw Error("GradingMismatch", "cochain and chain gradings differ");
    const Ring& ring = a.ring();
    Scalar s = 0;
    for (const auto& [sigma, c] : a.terms())
    {
        Scalar y = x.coeff(sigma);
        if (sgn(y) != 0)
            s = ring.add(s, ring.mul(c, y));
    }
    return s;
}

// ------------------------------------------------------------------ //
//                         Matrices and vectors                       //
// ------------------------------------------------------------------ //

std::vector<VertexSet> cochain_basis(const SimplicialComplex& k, VertexSet J, int p)
{
    return k.faces_in(J, p);
}

namespace {

using FaceIndex = std::unordered_map<VertexSet, std::size_t, VertexSetHash>;

FaceIndex index_of(const std::vector<VertexSet>& basis)
{
    FaceIndex idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        idx.emplace(basis[i], i);
    return idx;
}

Matrix coboundary_matrix(const std::vector<VertexSet>& src, const std::vector<VertexSet>& dst, VertexSet J)
{
    Matrix m(dst.size(), src.size());
    FaceIndex idx = index_of(dst);
    for (std::size_t c = 0; c < src.size(); ++c)
    {
        const VertexSet sigma = src[c];
        (J - sigma).for_each([&](int j) {
            auto it = idx.find(sigma.with(j));
            if (it != idx.end())
                m(it->second, c) = epsilon(j, sigma.with(j));
        });
    }
    return m;
}

template <typename G>
Vector graded_to_vector(const G& a)
{
    std::vector<VertexSet> basis = a.complex()->faces_in(a.J(), a.degree());
    FaceIndex idx = index_of(basis);
    Vector v(basis.size());
    for (const auto& [s, c] : a.terms())
        v[idx.at(s)] = c;
    return v;
}

template <typename G>
G graded_from_vector(const ComplexPtr& k, VertexSet J, int p, const Ring& ring, const Vector& v)
{
    std::vector<VertexSet> basis = k->faces_in(J, p);
    if (basis.size() != v.size())
        throw Error("DimensionMismatch", "vector length differs from the cochain basis size");
    G g(k, J, p, ring);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            g.add(basis[i], v[i]);
    return g;
}

}  // namespace

Matrix coboundary_matrix(const SimplicialComplex& k, VertexSet J, int p)
{
    return coboundary_matrix(k.faces_in(J, p), k.faces_in(J, p + 1), J);
}

Vector to_vector(const Cochain& a) { return graded_to_vector(a); }

Cochain from_vector(const ComplexPtr& k, VertexSet J, int p, const Ring& ring, const Vector& v)
{
    return graded_from_vector<Cochain>(k, J, p, ring, v);
}

Vector to_vector(const Chain& x) { return graded_to_vector(x); }

Chain chain_from_vector(const ComplexPtr& k, VertexSet J, int p, const Ring& ring, const Vector& v)
{
    return graded_from_vector<Chain>(k, J, p, ring, v);
}

// ------------------------------------------------------------------ //
//                          CohomologyBasis                           //
// ------------------------------------------------------------------ //

namespace {

/** Inverse of a unimodular integer matrix (computed over Q). */
Matrix integer_inverse(const Matrix& u)
{
    const Ring q = Ring::rationals();
    LinearSolver solver(u, q);
    Matrix inv(u.rows(), u.cols());
    for (std::size_t i = 0; i < u.rows(); ++i)
    {
        Vector e(u.rows());
        e[i] = 1;
        Vector x = *solver.solve(e);
        for (std::size_t r = 0; r < x.size(); ++r)
            inv(r, i) = x[r];
    }
    return inv;
}

}  // namespace

CohomologyBasis::CohomologyBasis(ComplexPtr k, VertexSet J, int p, Ring ring)
    : k_(std::move(k)), J_(J), p_(p), ring_(ring)
{
    if (!k_->all_vertices().contains(J))
        throw Error("UnknownVertex", "J is not a subset of the vertex set");
    const std::vector<VertexSet> prev = k_->faces_in(J, p - 1);
    const std::vector<VertexSet> cur = k_->faces_in(J, p);
    const std::vector<VertexSet> next = k_->faces_in(J, p + 1);
    const Matrix d_in = coboundary_matrix(prev, cur, J);
    const Matrix d_out = coboundary_matrix(cur, next, J);

    LinearSolver out_solver(d_out, ring_);
    for (const Vector& v : out_solver.kernel_basis())
        cocycles_.push_back(from_vector(k_, J, p, ring_, v));
    for (std::size_t c = 0; c < d_in.cols(); ++c)
    {
        Cochain b = from_vector(k_, J, p, ring_, d_in.column(c));
        if (!b.is_zero())
            coboundaries_.push_back(std::move(b));
    }
    group_ = homology_group(d_in, d_out, cur.size(), ring_);
    primitive_solver_.emplace(d_in, ring_);

    const std::size_t z = cocycles_.size();
    if (z == 0)
        return;
    if (ring_.is_field())
    {
        // Extend a basis of B^p to Z^p greedily along the cocycle basis.
        std::vector<Vector> span;
        for (std::size_t c = 0; c < d_in.cols(); ++c)
            span.push_back(d_in.column(c));
        std::size_t current = span.empty() ? 0 : rank(Matrix::from_columns(cur.size(), span), ring_);
        for (const Vector& v : out_solver.kernel_basis())
        {
            span.push_back(v);
            std::size_t r = rank(Matrix::from_columns(cur.size(), span), ring_);
            if (r > current)
            {
                current = r;
                representatives_.push_back(from_vector(k_, J, p, ring_, v));
            }
            else
                span.pop_back();
        }
        return;
    }
    // Over Z: write B^p in the coordinates of the cocycle lattice basis and
    // read generators of Z^p / B^p off the Smith form of that matrix.
    const Matrix zmat = Matrix::from_columns(cur.size(), out_solver.kernel_basis());
    LinearSolver coords_solver(zmat, ring_);
    Matrix coords(z, d_in.cols());
    for (std::size_t c = 0; c < d_in.cols(); ++c)
    {
        Vector y = *coords_solver.solve(d_in.column(c));
        for (std::size_t i = 0; i < z; ++i)
            coords(i, c) = y[i];
    }
    SmithForm f = smith_normal_form(coords);
    const Matrix uinv = integer_inverse(f.U);
    const Matrix gens = multiply(zmat, uinv, ring_);
    std::vector<Cochain> torsion_reps;
    for (std::size_t i = 0; i < z; ++i)
    {
        Cochain rep = from_vector(k_, J, p, ring_, gens.column(i));
        if (i >= f.rank)
            representatives_.push_back(std::move(rep));
        else if (f.invariant_factors[i] != 1)
            torsion_reps.push_back(std::move(rep));
    }
    for (auto& t : torsion_reps)
        representatives_.push_back(std::move(t));
}

bool CohomologyBasis::is_cocycle(const Cochain& a) const
{
    if (a.J() != J_ || a.degree() != p_)
        throw Error("GradingMismatch", "cochain grading differs from the basis grading");
    return coboundary(a).is_zero();
}

bool CohomologyBasis::is_coboundary(const Cochain& a) const { return primitive(a).has_value(); }

std::optional<Cochain> CohomologyBasis::primitive(const Cochain& a) const
{
    if (a.J() != J_ || a.degree() != p_)
        throw Error("GradingMismatch", "cochain grading differs from the basis grading");
    auto x = primitive_solver_->solve(to_vector(a));
    if (!x)
        return std::nullopt;
    return from_vector(k_, J_, p_ - 1, ring_, *x);
}

CohomologyBasis reduced_cohomology(const ComplexPtr& k, VertexSet J, int p, const Ring& ring)
{
    return CohomologyBasis(k, J, p, ring);
}

std::optional<Cochain> find_primitive(const Cochain& a)
{
    const SimplicialComplex& k = *a.complex();
    const Matrix d_in = coboundary_matrix(k, a.J(), a.degree() - 1);
    if (a.is_zero())
        return Cochain(a.complex(), a.J(), a.degree() - 1, a.ring());
    if (d_in.cols() == 0)
        return std::nullopt;
    LinearSolver solver(d_in, a.ring());
    auto x = solver.solve(to_vector(a));
    if (!x)
        return std::nullopt;
    return from_vector(a.complex(), a.J(), a.degree() - 1, a.ring(), *x);
}

bool is_coboundary(const Cochain& a) { return find_primitive(a).has_value(); }

std::vector<AbelianGroup> reduced_cohomology_groups(const SimplicialComplex& k, VertexSet J, const Ring& ring)
{
    const int top = J.size() - 1;
    std::vector<std::vector<VertexSet>> bases;
    for (int p = -2; p <= top + 1; ++p)
        bases.push_back(p < -1 ? std::vector<VertexSet>{} : k.faces_in(J, p));
    // d[p + 2] = δ^p : C^p → C^{p+1}
    std::vector<Matrix> d;
    for (int p = -2; p <= top; ++p)
        d.push_back(coboundary_matrix(bases[p + 2], bases[p + 3], J));
    std::vector<AbelianGroup> out;
    for (int p = -1; p <= top; ++p)
        out.push_back(homology_group(d[p + 1], d[p + 2], bases[p + 2].size(), ring));
    return out;
}

std::vector<AbelianGroup> reduced_homology(const SimplicialComplex& k, const Ring& ring)
{
    const VertexSet J = k.all_vertices();
    const int top = k.dimension();
    std::vector<std::vector<VertexSet>> bases;
    for (int p = -2; p <= top + 1; ++p)
        bases.push_back(p < -1 ? std::vector<VertexSet>{} : k.faces_in(J, p));
    // boundary ∂_p : C_p → C_{p-1} is the transpose of δ^{p-1}
    auto bd = [&](int p) { return coboundary_matrix(bases[p + 1], bases[p + 2], J).transpose(); };
    std::vector<AbelianGroup> out;
    for (int p = -1; p <= top; ++p)
        out.push_back(homology_group(bd(p + 1), bd(p), bases[p + 2].size(), ring));
    return out;
}

std::vector<std::size_t> reduced_betti(const SimplicialComplex& k, const Ring& field)
{
    std::vector<std::size_t> out;
    for (const AbelianGroup& g : reduced_homology(k, field))
        out.push_back(g.free_rank);
    return out;
}

}  // namespace matk
