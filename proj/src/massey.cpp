#include "matk/massey.hpp"

#include "matk/error.hpp"

#include <algorithm>
#include <limits>

namespace matk {

// ------------------------------------------------------------------ //
//                           DefiningSystem                           //
// ------------------------------------------------------------------ //

DefiningSystem::DefiningSystem(const std::vector<Cochain>& representatives)
    : n_(static_cast<int>(representatives.size()))
{
    if (n_ < 2)
        throw Error("InvalidDefiningSystem", "a Massey product needs at least two classes");
    entries_.resize(static_cast<std::size_t>(n_) * n_);
    for (int i = 1; i <= n_; ++i)
        entries_[slot(i, i)] = representatives[i - 1];
}

DefiningSystem::DefiningSystem(const std::vector<CohomologyClass>& classes)
    : DefiningSystem([&] {
          std::vector<Cochain> reps;
          for (const auto& c : classes)
              reps.push_back(c.representative());
          return reps;
      }())
{
}

std::size_t DefiningSystem::slot(int i, int k) const
{
    if (i < 1 || k > n_ || i > k)
        throw Error("InvalidIndex", "defining system index out of range");
    return static_cast<std::size_t>(i - 1) * n_ + (k - 1);
}

bool DefiningSystem::has(int i, int k) const { return entries_[slot(i, k)].has_value(); }

const Cochain& DefiningSystem::at(int i, int k) const
{
    const auto& e = entries_[slot(i, k)];
    if (!e)
        throw Error("InvalidDefiningSystem", "entry (" + std::to_string(i) + "," + std::to_string(k) + ") is unset");
    return *e;
}

void DefiningSystem::set(int i, int k, Cochain a)
{
    if (i == 1 && k == n_)
        throw Error("InvalidIndex", "a defining system has no (1,n) entry");
    if (a.J() != J(i, k) || a.degree() != degree(i, k))
        throw Error("GradingMismatch", "entry (" + std::to_string(i) + "," + std::to_string(k) +
                                           ") has the wrong grading");
    entries_[slot(i, k)] = std::move(a);
}

VertexSet DefiningSystem::J(int i, int k) const
{
    VertexSet s;
    for (int l = i; l <= k; ++l)
        s = s | at(l, l).J();
    return s;
}

int DefiningSystem::degree(int i, int k) const
{
    int d = 0;
    for (int l = i; l <= k; ++l)
        d += at(l, l).degree();
    return d;
}

const ComplexPtr& DefiningSystem::complex() const { return at(1, 1).complex(); }

const Ring& DefiningSystem::ring() const { return at(1, 1).ring(); }

std::vector<std::pair<int, int>> DefiningSystem::stages() const
{
    std::vector<std::pair<int, int>> out;
    for (int len = 1; len < n_; ++len)
        for (int i = 1; i + len <= n_; ++i)
        {
            const int k = i + len;
            if (i == 1 && k == n_)
                continue;
            out.emplace_back(i, k);
        }
    return out;
}

// ------------------------------------------------------------------ //
//                      Equations and the cocycle                     //
// ------------------------------------------------------------------ //

Cochain staircase_rhs(const DefiningSystem& ds, int i, int k)
{
    Cochain sum(ds.complex(), ds.J(i, k), ds.degree(i, k) + 1, ds.ring());
    for (int r = i; r < k; ++r)
        sum += cup_multiply(bar(ds.at(i, r)), ds.at(r + 1, k));
    return sum;
}

std::vector<Violation> check_defining_system(const DefiningSystem& ds)
{
    std::vector<Violation> out;
    for (auto [i, k] : ds.stages())
    {
        Cochain residual = coboundary(ds.at(i, k)) - staircase_rhs(ds, i, k);
        if (!residual.is_zero())
            out.push_back(Violation{i, k, std::move(residual)});
    }
    return out;
}

Cochain associated_cocycle(const DefiningSystem& ds)
{
    auto violations = check_defining_system(ds);
    if (!violations.empty())
        throw Error("InvalidDefiningSystem", "equation (" + std::to_string(violations.front().i) + "," +
                                                 std::to_string(violations.front().k) + ") fails");
    return staircase_rhs(ds, 1, ds.size());
}

namespace {

void require_disjoint(const std::vector<CohomologyClass>& classes)
{
    for (std::size_t a = 0; a < classes.size(); ++a)
    {
        if (!(classes[a].ring() == classes[0].ring()) ||
            !(classes[a].complex() == classes[0].complex() || *classes[a].complex() == *classes[0].complex()))
            throw Error("AmbientMismatch", "classes belong to different complexes or rings");
        for (std::size_t b = a + 1; b < classes.size(); ++b)
            if (classes[a].J().intersects(classes[b].J()))
                throw Error("OverlappingSupports", "the full subcomplexes of the classes must be disjoint");
    }
}

int massey_total_degree(const std::vector<CohomologyClass>& classes)
{
    int d = 0;
    VertexSet J;
    for (const auto& c : classes)
    {
        d += c.degree();
        J = J | c.J();
    }
    return d + J.size() + 2;
}

/** Solver for the coboundary δ^p on K_J. */
LinearSolver coboundary_solver(const SimplicialComplex& k, VertexSet J, int p, const Ring& ring)
{
    return LinearSolver(coboundary_matrix(k, J, p), ring);
}

}  // namespace

// ------------------------------------------------------------------ //
//                         Evaluating cycles                          //
// ------------------------------------------------------------------ //

std::optional<Chain> evaluating_cycle(const Cochain& omega, const std::vector<Cochain>& annihilate)
{
    const SimplicialComplex& k = *omega.complex();
    const VertexSet J = omega.J();
    const int q = omega.degree();
    const Ring field = omega.ring().is_field() ? omega.ring() : Ring::rationals();
    const std::vector<VertexSet> basis = k.faces_in(J, q);
    if (basis.empty())
        return std::nullopt;
    // Rows: ∂x = 0, g(x) = 0 for every g, ω(x) = 1.
    const Matrix bd = coboundary_matrix(k, J, q - 1).transpose();
    Matrix a(bd.rows() + annihilate.size() + 1, basis.size());
    for (std::size_t r = 0; r < bd.rows(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c)
            a(r, c) = bd(r, c);
    auto put_row = [&](std::size_t r, const Cochain& g) {
        Vector v = to_vector(g);
        for (std::size_t c = 0; c < basis.size(); ++c)
            a(r, c) = v[c];
    };
    for (std::size_t i = 0; i < annihilate.size(); ++i)
        put_row(bd.rows() + i, annihilate[i]);
    put_row(a.rows() - 1, omega);
    Vector b(a.rows());
    b.back() = 1;
    LinearSolver solver(a, field);
    auto x = solver.solve(b);
    if (!x)
        return std::nullopt;
    if (!omega.ring().is_field())
    {
        Integer l = 1;
        for (const Scalar& v : *x)
            l = lcm(l, Integer(v.get_den()));
        for (Scalar& v : *x)
            v *= l;
    }
    return chain_from_vector(omega.complex(), J, q, omega.ring(), *x);
}

// ------------------------------------------------------------------ //
//                        Triple Massey decision                      //
// ------------------------------------------------------------------ //

MasseyVerdict triple_massey_decide(const CohomologyClass& a1, const CohomologyClass& a2, const CohomologyClass& a3)
{
    const std::vector<CohomologyClass> classes{a1, a2, a3};
    require_disjoint(classes);
    const SimplicialComplex& k = *a1.complex();
    const Ring& ring = a1.ring();
    MasseyVerdict v;
    v.total_degree = massey_total_degree(classes);

    DefiningSystem ds(classes);
    const int p1 = a1.degree(), p2 = a2.degree(), p3 = a3.degree();
    const VertexSet J12 = a1.J() | a2.J(), J23 = a2.J() | a3.J(), J = J12 | a3.J();
    auto solve_entry = [&](int i, int kk, VertexSet Jik, int deg) -> bool {
        Cochain rhs = staircase_rhs(ds, i, kk);
        auto x = coboundary_solver(k, Jik, deg, ring).solve(to_vector(rhs));
        if (!x)
            return false;
        ds.set(i, kk, from_vector(ds.complex(), Jik, deg, ring, *x));
        return true;
    };
    if (!solve_entry(1, 2, J12, p1 + p2) || !solve_entry(2, 3, J23, p2 + p3))
    {
        v.defined = Tristate::False;
        v.contains_zero = Tristate::False;
        return v;
    }
    v.defined = Tristate::True;
    const Cochain omega = staircase_rhs(ds, 1, 3);

    // Indeterminacy generators: α1·Z(K_{J23}) and Z(K_{J12})·α3.
    std::vector<Cochain> gens;
    const Cochain a1bar = bar(a1.representative());
    const CohomologyBasis h23 = reduced_cohomology(ds.complex(), J23, p2 + p3, ring);
    const CohomologyBasis h12 = reduced_cohomology(ds.complex(), J12, p1 + p2, ring);
    for (const Cochain& z : h23.cocycle_basis())
        gens.push_back(cup_multiply(a1bar, z));
    for (const Cochain& z : h12.cocycle_basis())
        gens.push_back(cup_multiply(z, a3.representative()));

    const int top = p1 + p2 + p3 + 1;
    const Matrix delta = coboundary_matrix(k, J, top - 1);
    const std::size_t dim = k.faces_in(J, top).size();
    std::vector<Vector> gen_cols;
    for (const Cochain& g : gens)
        gen_cols.push_back(to_vector(g));
    const Matrix span = delta.hconcat(Matrix::from_columns(dim, gen_cols));
    v.indeterminacy = quotient_group(span, delta, ring);
    v.indeterminacy_rank = v.indeterminacy->free_rank;
    const bool trivial = span.cols() > 0 && LinearSolver(span, ring).in_image(to_vector(omega));
    v.contains_zero = trivial || omega.is_zero() ? Tristate::True : Tristate::False;
    if (v.contains_zero == Tristate::False)
    {
        v.witness_system = ds;
        v.witness_cocycle = omega;
        v.witness_cycle = evaluating_cycle(omega, gens);
    }
    return v;
}

// ------------------------------------------------------------------ //
//                    Enumeration of defining systems                 //
// ------------------------------------------------------------------ //

namespace {

struct Stage
{
    int i = 0;
    int k = 0;
    VertexSet J;
    int degree = 0;
    std::optional<LinearSolver> solver;
    std::vector<Cochain> directions;
};

class Enumerator
{
  public:
    Enumerator(const std::vector<CohomologyClass>& classes, std::vector<Stage>& stages,
               const LinearSolver& final_solver, const SystemVisitor& visitor, MasseyVerdict& verdict)
        : ds_(classes), stages_(stages), final_(final_solver), visitor_(visitor), verdict_(verdict),
          elements_(classes.front().ring().elements())
    {
    }

    void run() { descend(0); }

  private:
    void descend(std::size_t s)
    {
        if (s == stages_.size())
        {
            leaf();
            return;
        }
        Stage& st = stages_[s];
        const Cochain rhs = staircase_rhs(ds_, st.i, st.k);
        auto x = st.solver->solve(to_vector(rhs));
        if (!x)
            return;
        const Ring& ring = ds_.ring();
        const Cochain particular = from_vector(ds_.complex(), st.J, st.degree, ring, *x);
        const std::size_t m = st.directions.size();
        std::vector<std::size_t> digits(m, 0);
        for (;;)
        {
            Cochain a = particular;
            for (std::size_t j = 0; j < m; ++j)
                if (digits[j] != 0)
                    a += st.directions[j].scaled(elements_[digits[j]]);
            ds_.set(st.i, st.k, std::move(a));
            descend(s + 1);
            // Next tuple in lexicographic order (last digit fastest).
            std::size_t j = m;
            while (j > 0)
            {
                --j;
                if (++digits[j] < elements_.size())
                    break;
                digits[j] = 0;
                if (j == 0)
                    return;
            }
            if (m == 0)
                return;
        }
    }

    void leaf()
    {
        const Cochain omega = staircase_rhs(ds_, 1, ds_.size());
        const bool trivial = omega.is_zero() || final_.in_image(to_vector(omega));
        ++verdict_.systems_enumerated;
        verdict_.defined = Tristate::True;
        if (trivial)
            verdict_.contains_zero = Tristate::True;
        else if (!verdict_.witness_system)
        {
            verdict_.witness_system = ds_;
            verdict_.witness_cocycle = omega;
        }
        if (visitor_)
            visitor_(ds_, omega, trivial);
    }

    DefiningSystem ds_;
    std::vector<Stage>& stages_;
    const LinearSolver& final_;
    const SystemVisitor& visitor_;
    MasseyVerdict& verdict_;
    std::vector<Scalar> elements_;
};

}  // namespace

MasseyVerdict enumerate_defining_systems(const std::vector<CohomologyClass>& classes, std::size_t budget,
                                         const SystemVisitor& visitor, ParameterSpace space)
{
    if (classes.size() < 2)
        throw Error("InvalidDefiningSystem", "a Massey product needs at least two classes");
    const Ring& ring = classes.front().ring();
    if (!ring.is_finite())
        throw Error("RingNotFinite", "enumeration needs a prime field, got " + ring.name());
    require_disjoint(classes);
    const SimplicialComplex& k = *classes.front().complex();

    MasseyVerdict v;
    v.total_degree = massey_total_degree(classes);
    DefiningSystem shape(classes);
    std::vector<Stage> stages;
    std::size_t params = 0;
    for (auto [i, kk] : shape.stages())
    {
        Stage st;
        st.i = i;
        st.k = kk;
        st.J = shape.J(i, kk);
        st.degree = shape.degree(i, kk);
        st.solver.emplace(coboundary_solver(k, st.J, st.degree, ring));
        CohomologyBasis basis = reduced_cohomology(shape.complex(), st.J, st.degree, ring);
        st.directions =
            space == ParameterSpace::Cocycles ? basis.cocycle_basis() : basis.class_representatives();
        params += st.directions.size();
        stages.push_back(std::move(st));
    }
    v.parameter_count = params;

    // Number of systems p^params, compared against the budget without overflow.
    std::size_t systems = 1;
    for (std::size_t j = 0; j < params; ++j)
    {
        if (systems > budget / ring.characteristic())
        {
            v.budget_exhausted = true;
            return v;
        }
        systems *= ring.characteristic();
    }
    if (systems > budget)
    {
        v.budget_exhausted = true;
        return v;
    }

    const LinearSolver final_solver = coboundary_solver(k, shape.J(1, classes.size()),
                                                        shape.degree(1, classes.size()), ring);
    v.defined = Tristate::False;
    v.contains_zero = Tristate::False;
    Enumerator(classes, stages, final_solver, visitor, v).run();
    if (v.defined == Tristate::False)
        v.contains_zero = Tristate::False;
    if (v.contains_zero == Tristate::True)
    {
        v.witness_system.reset();
        v.witness_cocycle.reset();
    }
    else if (v.witness_cocycle)
        v.witness_cycle = evaluating_cycle(*v.witness_cocycle);
    return v;
}

// ------------------------------------------------------------------ //
//                              Dispatch                              //
// ------------------------------------------------------------------ //

MasseyVerdict decide_massey(const std::vector<CohomologyClass>& classes, std::size_t budget)
{
    if (classes.size() < 2)
        throw Error("InvalidDefiningSystem", "a Massey product needs at least two classes");
    if (classes.size() == 3)
        return triple_massey_decide(classes[0], classes[1], classes[2]);
    if (classes.size() == 2)
    {
        require_disjoint(classes);
        MasseyVerdict v;
        v.total_degree = massey_total_degree(classes);
        v.defined = Tristate::True;
        const Cochain omega = cup_multiply(bar(classes[0].representative()), classes[1].representative());
        const bool trivial = is_coboundary(omega);
        v.contains_zero = trivial ? Tristate::True : Tristate::False;
        if (!trivial)
        {
            v.witness_system = DefiningSystem(classes);
            v.witness_cocycle = omega;
            v.witness_cycle = evaluating_cycle(omega);
        }
        return v;
    }
    if (classes.front().ring().is_finite())
        return enumerate_defining_systems(classes, budget);
    require_disjoint(classes);
    MasseyVerdict v;
    v.total_degree = massey_total_degree(classes);
    return v;
}

}  // namespace matk
