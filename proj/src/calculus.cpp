#include "derivlab/calculus.hpp"

#include <algorithm>
#include <numeric>

#include "derivlab/batch.hpp"
#include "derivlab/error.hpp"

namespace derivlab {

FieldElement PointFunction::operator()(const FieldElement& x) const {
    if (!fn)
        fail(Errc::OutOfDomain, "uninitialized point function");
    if (domain && !domain(x))
        fail(Errc::OutOfDomain, x.to_string() + " is outside the function's domain");
    return fn(x);
}

bool PointFunction::in_domain(const FieldElement& x) const {
    if (!fn)
        return false;
    return !domain || domain(x);
}

PointFunction PointFunction::from_map(const AdditiveMap& f) {
    PointFunction pf;
    pf.tower = f.tower();
    pf.fn = [f](const FieldElement& x) { return f(x); };
    if (!f.whole_domain())
        pf.domain = [f](const FieldElement& x) { return f.in_domain(x); };
    return pf;
}

PointFunction PointFunction::constant(const FieldElement& c) {
    PointFunction pf;
    pf.tower = c.tower();
    pf.fn = [c](const FieldElement&) { return c; };
    return pf;
}

PointFunction delta(const PointFunction& f, const FieldElement& h) {
    if (!f.fn)
        fail(Errc::OutOfDomain, "uninitialized point function");
    PointFunction pf;
    pf.tower = f.tower;
    pf.fn = [f, h](const FieldElement& x) { return f(x + h) - f(x); };
    if (f.domain)
        pf.domain = [f, h](const FieldElement& x) {
            return f.in_domain(x) && f.in_domain(x + h);
        };
    return pf;
}

PointFunction delta_multi(const PointFunction& f, const std::vector<FieldElement>& spans) {
    PointFunction acc = f;
    for (const auto& h : spans)
        acc = delta(acc, h);
    return acc;
}

VerdictReport poly_degree_check(const PointFunction& f, long n, const SampleSet& samples) {
    if (n < 0)
        fail(Errc::ParameterOutOfRange, "degree bound must be nonnegative");
    if (samples.size() == 0)
        fail(Errc::ParameterOutOfRange, "empty sample set");
    const size_t count = samples.size();
    const size_t spans = static_cast<size_t>(n) + 1;
    auto tuple_at = [&](size_t i) {
        std::vector<FieldElement> ys;
        ys.reserve(spans);
        for (size_t j = 0; j < spans; ++j)
            ys.push_back(samples.elements[(i + 1 + j) % count]);
        return ys;
    };
    VerdictReport rep = run_identity_check(
        "poly_degree_check", "delta_{y1..y" + std::to_string(spans) + "} f(x) = 0", count,
        [&](size_t i) {
            return delta_multi(f, tuple_at(i))(samples.elements[i]).is_zero();
        },
        [&](size_t i) {
            Witness w;
            w.inputs = {{"x", samples.elements[i].to_string()}};
            const auto ys = tuple_at(i);
            for (size_t j = 0; j < ys.size(); ++j)
                w.inputs.emplace_back("y" + std::to_string(j + 1), ys[j].to_string());
            w.lhs = delta_multi(f, ys)(samples.elements[i]).to_string();
            w.rhs = "0";
            return w;
        });
    if (f.tower)
        rep.assumptions = f.tower->assumptions();
    rep.notes.push_back("degree bound n = " + std::to_string(n));
    return rep;
}

FieldElement trace_to_multiadditive(const PointFunction& f, long n,
                                    const std::vector<FieldElement>& tuple,
                                    const std::vector<FieldElement>& basepoints) {
    if (n < 1)
        fail(Errc::ParameterOutOfRange, "arity must be at least 1");
    if (tuple.size() != static_cast<size_t>(n))
        fail(Errc::ArityError, "expected " + std::to_string(n) + " spans, got " +
                                   std::to_string(tuple.size()));
    if (basepoints.empty())
        fail(Errc::ParameterOutOfRange, "at least one basepoint is required");
    const PointFunction d = delta_multi(f, tuple);
    const FieldElement first = d(basepoints[0]);
    for (size_t i = 1; i < basepoints.size(); ++i) {
        const FieldElement other = d(basepoints[i]);
        if (other != first)
            fail(Errc::BasePointDependence,
                 "difference value depends on the basepoint: " + first.to_string() + " at " +
                     basepoints[0].to_string() + " vs " + other.to_string() + " at " +
                     basepoints[i].to_string());
    }
    return first / factorial(static_cast<unsigned>(n));
}

std::vector<FieldElement> default_basepoints(const TowerPtr& K, std::mt19937_64& rng,
                                             size_t random_count) {
    std::vector<FieldElement> out = {K->zero(), K->one()};
    for (size_t i = 0; i < random_count; ++i)
        out.push_back(random_element(K, rng));
    return out;
}

FieldElement trace_to_multiadditive(const PointFunction& f, long n,
                                    const std::vector<FieldElement>& tuple,
                                    std::mt19937_64& rng) {
    if (!f.tower)
        fail(Errc::OutOfDomain, "point function has no tower");
    return trace_to_multiadditive(f, n, tuple, default_basepoints(f.tower, rng));
}

MultiAdditiveMap::MultiAdditiveMap(TowerPtr K, size_t arity, Evaluator eval, bool symmetric)
    : tower_(std::move(K)), arity_(arity), eval_(std::move(eval)), symmetric_(symmetric) {
    if (arity_ < 1)
        fail(Errc::ArityError, "arity must be at least 1");
    if (!eval_)
        fail(Errc::OutOfDomain, "uninitialized evaluator");
}

FieldElement MultiAdditiveMap::eval(const std::vector<FieldElement>& xs) const {
    if (xs.size() != arity_)
        fail(Errc::ArityError, "expected " + std::to_string(arity_) + " arguments, got " +
                                   std::to_string(xs.size()));
    return eval_(xs);
}

PointFunction MultiAdditiveMap::trace() const {
    PointFunction pf;
    pf.tower = tower_;
    auto ev = eval_;
    const size_t n = arity_;
    pf.fn = [ev, n](const FieldElement& x) {
        return ev(std::vector<FieldElement>(n, x));
    };
    return pf;
}

VerdictReport MultiAdditiveMap::certify_slot_additivity(std::mt19937_64& rng,
                                                        int trials_per_slot) const {
    struct Trial {
        std::vector<FieldElement> xs;
        size_t slot;
        Rational q;
    };
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    std::vector<Trial> trials;
    trials.reserve(arity_ * static_cast<size_t>(trials_per_slot));
    for (size_t s = 0; s < arity_; ++s) {
        for (int t = 0; t < trials_per_slot; ++t) {
            Trial tr;
            tr.slot = s;
            for (size_t i = 0; i < arity_; ++i)
                tr.xs.push_back(random_element(tower_, rng));
            long a = num(rng);
            if (a == 0)
                a = 1;
            tr.q = Rational(a, den(rng));
            trials.push_back(std::move(tr));
        }
    }
    auto sides = [&](size_t i) {
        const Trial& tr = trials[i];
        std::vector<FieldElement> plus = tr.xs, inc = tr.xs;
        plus[tr.slot] = tr.xs[tr.slot] + tower_->from_rational(tr.q);
        inc[tr.slot] = tower_->from_rational(tr.q);
        return std::make_pair(eval_(plus), eval_(tr.xs) + eval_(inc));
    };
    VerdictReport rep = run_identity_check(
        "slot_additivity", "F(.., x + q, ..) = F(.., x, ..) + F(.., q, ..)", trials.size(),
        [&](size_t i) {
            auto [lhs, rhs] = sides(i);
            return lhs == rhs;
        },
        [&](size_t i) {
            auto [lhs, rhs] = sides(i);
            Witness w;
            w.inputs.emplace_back("slot", std::to_string(trials[i].slot + 1));
            for (size_t j = 0; j < trials[i].xs.size(); ++j)
                w.inputs.emplace_back("x" + std::to_string(j + 1),
                                      trials[i].xs[j].to_string());
            w.inputs.emplace_back("q", trials[i].q.to_string());
            w.lhs = lhs.to_string();
            w.rhs = rhs.to_string();
            return w;
        });
    rep.assumptions = tower_->assumptions();
    rep.notes.push_back(std::to_string(trials_per_slot) + " trials per slot, " +
                        std::to_string(arity_) + " slots");
    return rep;
}

VerdictReport MultiAdditiveMap::certify_symmetry(std::mt19937_64& rng, int trials) const {
    struct Trial {
        std::vector<FieldElement> xs;
        std::vector<size_t> perm;
    };
    std::vector<Trial> data;
    data.reserve(static_cast<size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        Trial tr;
        for (size_t i = 0; i < arity_; ++i)
            tr.xs.push_back(random_element(tower_, rng));
        tr.perm.resize(arity_);
        std::iota(tr.perm.begin(), tr.perm.end(), size_t{0});
        std::shuffle(tr.perm.begin(), tr.perm.end(), rng);
        data.push_back(std::move(tr));
    }
    auto sides = [&](size_t i) {
        std::vector<FieldElement> permuted;
        permuted.reserve(arity_);
        for (size_t j = 0; j < arity_; ++j)
            permuted.push_back(data[i].xs[data[i].perm[j]]);
        return std::make_pair(eval_(data[i].xs), eval_(permuted));
    };
    VerdictReport rep = run_identity_check(
        "symmetry", "F(x1..xn) = F(x_pi(1)..x_pi(n))", data.size(),
        [&](size_t i) {
            auto [lhs, rhs] = sides(i);
            return lhs == rhs;
        },
        [&](size_t i) {
            auto [lhs, rhs] = sides(i);
            Witness w;
            for (size_t j = 0; j < data[i].xs.size(); ++j)
                w.inputs.emplace_back("x" + std::to_string(j + 1), data[i].xs[j].to_string());
            w.lhs = lhs.to_string();
            w.rhs = rhs.to_string();
            return w;
        });
    rep.assumptions = tower_->assumptions();
    return rep;
}

FieldElement PolynomialDecomposition::eval_sum(const FieldElement& x) const {
    if (traces.empty())
        fail(Errc::OutOfDomain, "empty decomposition");
    FieldElement acc = traces[0](x);
    for (size_t k = 1; k < traces.size(); ++k)
        acc += traces[k](x);
    return acc;
}

PolynomialDecomposition decompose_polynomial(const PointFunction& p, long n,
                                             const SampleSet& samples) {
    if (n < 0)
        fail(Errc::ParameterOutOfRange, "degree bound must be nonnegative");
    if (!p.tower)
        fail(Errc::OutOfDomain, "point function has no tower");
    VerdictReport pre = poly_degree_check(p, n, samples);
    if (pre.status != Status::PASS) {
        std::string msg = "not a polynomial function of degree at most " + std::to_string(n) +
                          " on the samples";
        if (pre.witness)
            msg += "; residual " + pre.witness->lhs + " at x = " + pre.witness->inputs[0].second;
        fail(Errc::DegreeExceeded, msg);
    }

    const TowerPtr K = p.tower;
    PolynomialDecomposition out;
    out.degree_bound = n;
    out.traces.resize(static_cast<size_t>(n) + 1);

    // Top-down extraction: k repeated differences at 0 isolate k! times the
    // degree-k trace once all higher traces have been subtracted off.
    PointFunction residual = p;
    for (long k = n; k >= 1; --k) {
        const Rational kfact = factorial(static_cast<unsigned>(k));
        PointFunction base = residual;
        PointFunction fk;
        fk.tower = K;
        fk.domain = base.domain;
        fk.fn = [base, k, kfact, K](const FieldElement& x) {
            std::vector<FieldElement> spans(static_cast<size_t>(k), x);
            return delta_multi(base, spans)(K->zero()) / kfact;
        };
        out.traces[static_cast<size_t>(k)] = fk;
        PointFunction next;
        next.tower = K;
        next.domain = base.domain;
        next.fn = [base, fk](const FieldElement& x) { return base(x) - fk(x); };
        residual = next;
    }
    out.traces[0] = PointFunction::constant(residual(K->zero()));
    return out;
}

MultiAdditiveMap symmetrize_thm21(const AdditiveMap& f, const AdditiveMap& g, long n, long m) {
    if (m < 1 || m >= n)
        fail(Errc::ArityError, "need n > m >= 1, got n = " + std::to_string(n) +
                                   ", m = " + std::to_string(m));
    if (n > 12)
        fail(Errc::ArityError, "arity capped at 12, got " + std::to_string(n));
    if (!f.tower()->same_as(*g.tower()))
        fail(Errc::TowerMismatch,
             "maps on " + f.tower()->describe() + " and " + g.tower()->describe());
    const TowerPtr K = f.tower();
    const size_t N = static_cast<size_t>(n);
    const size_t M = static_cast<size_t>(m);

    // All C(n,m) index subsets in lexicographic order.
    std::vector<std::vector<size_t>> subsets;
    std::vector<size_t> idx(M);
    std::iota(idx.begin(), idx.end(), size_t{0});
    while (true) {
        subsets.push_back(idx);
        size_t i = M;
        while (i > 0 && idx[i - 1] == N - M + i - 1)
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (size_t j = i; j < M; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    const Rational inv_binom = binomial(static_cast<unsigned>(n), static_cast<unsigned>(m)).inv();

    auto ev = [f, g, K, N, subsets, inv_binom](const std::vector<FieldElement>& xs) {
        FieldElement prod = K->one();
        for (const auto& x : xs)
            prod *= x;
        FieldElement acc = K->zero();
        std::vector<char> in_subset(N, 0);
        for (const auto& I : subsets) {
            std::fill(in_subset.begin(), in_subset.end(), 0);
            FieldElement inner = K->one();
            for (size_t i : I) {
                inner *= xs[i];
                in_subset[i] = 1;
            }
            FieldElement outer = K->one();
            for (size_t j = 0; j < N; ++j)
                if (!in_subset[j])
                    outer *= xs[j];
            acc += outer * g(inner);
        }
        return f(prod) - acc * inv_binom;
    };
    return MultiAdditiveMap(K, N, std::move(ev), true);
}

MultiAdditiveMap symmetrize_linearity(const AdditiveMap& f, long n) {
    if (n < 2)
        fail(Errc::ArityError, "arity must be at least 2, got " + std::to_string(n));
    if (n > 12)
        fail(Errc::ArityError, "arity capped at 12, got " + std::to_string(n));
    const TowerPtr K = f.tower();
    const size_t N = static_cast<size_t>(n);
    auto ev = [f, K](const std::vector<FieldElement>& xs) {
        FieldElement prod = K->one();
        FieldElement fprod = K->one();
        for (const auto& x : xs) {
            prod *= x;
            fprod *= f(x);
        }
        return f(prod) - fprod;
    };
    return MultiAdditiveMap(K, N, std::move(ev), true);
}

} // namespace derivlab
