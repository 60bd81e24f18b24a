#include "derivlab/maps.hpp"

#include <algorithm>

#include "derivlab/batch.hpp"
#include "derivlab/error.hpp"
#include "derivlab/qspan.hpp"

namespace derivlab {

using detail::Value;

struct AdditiveMap::Node {
    enum class Kind { ScaledId, Derivation, Matrix, Sum, Scale };
    Kind kind;
    FieldElement lambda;                     // ScaledId
    FieldElement t_image;                    // Derivation, towers with a transcendental
    std::vector<FieldElement> alg_images;    // Derivation, one per algebraic level
    std::vector<FieldElement> basis, images; // Matrix
    std::vector<std::shared_ptr<const Node>> children; // Sum
    Rational factor = Rational(1);           // Scale
    std::shared_ptr<const Node> inner;       // Scale
};

AdditiveMap::AdditiveMap(TowerPtr K, std::shared_ptr<const Node> node,
                         std::optional<std::vector<FieldElement>> span)
    : tower_(std::move(K)), node_(std::move(node)), span_(std::move(span)) {}

AdditiveMap AdditiveMap::scaled_identity(const FieldElement& lambda) {
    if (!lambda.tower())
        fail(Errc::OutOfDomain, "uninitialized scale factor");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::ScaledId;
    n->lambda = lambda;
    return AdditiveMap(lambda.tower(), std::move(n), std::nullopt);
}

AdditiveMap AdditiveMap::scaled_identity(const TowerPtr& K, const Rational& r) {
    return scaled_identity(K->from_rational(r));
}

AdditiveMap AdditiveMap::zero(const TowerPtr& K) {
    return scaled_identity(K, Rational(0));
}

AdditiveMap AdditiveMap::identity(const TowerPtr& K) {
    return scaled_identity(K, Rational(1));
}

namespace {

// Derivation value by structural recursion. The rational-function layer uses
// the formal quotient rule scaled by the transcendental image; an algebraic
// layer follows D(sum c_i g^i) = sum D(c_i) g^i + i c_i g^(i-1) D(g). Zero
// coefficients are skipped before their generator image is consulted, which
// lets the extension routine call this while the image list is still growing.
FieldElement d_eval(const TowerPtr& K, const AdditiveMap::Node& n, const Value& v) {
    if (v.level == 0) {
        if (!K->has_transcendental())
            return K->zero();
        const Poly np = v.num.derivative();
        if (v.den.is_one()) {
            if (np.is_zero())
                return K->zero();
            Value d0;
            d0.num = np;
            return K->from_value(std::move(d0)) * n.t_image;
        }
        Value nv, dv, npv, dpv;
        nv.num = v.num;
        dv.num = v.den;
        npv.num = np;
        dpv.num = v.den.derivative();
        const FieldElement N = K->from_value(std::move(nv));
        const FieldElement D = K->from_value(std::move(dv));
        const FieldElement Np = K->from_value(std::move(npv));
        const FieldElement Dp = K->from_value(std::move(dpv));
        return (Np * D - N * Dp) / (D * D) * n.t_image;
    }
    const size_t level = static_cast<size_t>(v.level);
    const FieldElement g = K->generator(K->levels()[level - 1].name);
    FieldElement acc = K->zero();
    for (size_t i = 0; i < v.coeffs.size(); ++i) {
        const FieldElement dci = d_eval(K, n, v.coeffs[i]);
        if (!dci.is_zero())
            acc += dci * g.pow(static_cast<long>(i));
        if (i >= 1) {
            const FieldElement ci = K->from_value(v.coeffs[i]);
            if (!ci.is_zero())
                acc += ci * Rational(static_cast<long>(i)) *
                       g.pow(static_cast<long>(i) - 1) * n.alg_images[level - 1];
        }
    }
    return acc;
}

FieldElement node_eval(const TowerPtr& K, const AdditiveMap::Node& n, const FieldElement& x) {
    switch (n.kind) {
    case AdditiveMap::Node::Kind::ScaledId:
        return n.lambda * x;
    case AdditiveMap::Node::Kind::Derivation:
        return d_eval(K, n, x.value());
    case AdditiveMap::Node::Kind::Matrix: {
        const auto coords = coordinates_in_span(n.basis, x);
        if (!coords)
            fail(Errc::OutOfDomain, x.to_string() + " is outside the map's Q-span domain");
        FieldElement acc = K->zero();
        for (size_t i = 0; i < n.images.size(); ++i)
            acc += n.images[i] * (*coords)[i];
        return acc;
    }
    case AdditiveMap::Node::Kind::Sum: {
        FieldElement acc = K->zero();
        for (const auto& c : n.children)
            acc += node_eval(K, *c, x);
        return acc;
    }
    case AdditiveMap::Node::Kind::Scale:
        return node_eval(K, *n.inner, x) * n.factor;
    }
    fail(Errc::OutOfDomain, "corrupt map node");
}

std::optional<std::vector<FieldElement>> node_dpi(const TowerPtr& K,
                                                  const AdditiveMap::Node& n) {
    const size_t count = K->generator_names().size();
    switch (n.kind) {
    case AdditiveMap::Node::Kind::ScaledId:
        return std::vector<FieldElement>(count, K->zero());
    case AdditiveMap::Node::Kind::Derivation: {
        std::vector<FieldElement> out;
        if (K->has_transcendental())
            out.push_back(n.t_image);
        for (const auto& im : n.alg_images)
            out.push_back(im);
        return out;
    }
    case AdditiveMap::Node::Kind::Matrix:
        return std::nullopt;
    case AdditiveMap::Node::Kind::Sum: {
        std::vector<FieldElement> acc(count, K->zero());
        for (const auto& c : n.children) {
            auto part = node_dpi(K, *c);
            if (!part)
                return std::nullopt;
            for (size_t i = 0; i < count; ++i)
                acc[i] += (*part)[i];
        }
        return acc;
    }
    case AdditiveMap::Node::Kind::Scale: {
        auto part = node_dpi(K, *n.inner);
        if (!part)
            return std::nullopt;
        for (auto& e : *part)
            e = e * n.factor;
        return part;
    }
    }
    return std::nullopt;
}

std::string node_describe(const AdditiveMap::Node& n) {
    switch (n.kind) {
    case AdditiveMap::Node::Kind::ScaledId:
        if (n.lambda.is_zero())
            return "0";
        if (n.lambda.is_one())
            return "id";
        return "(" + n.lambda.to_string() + ")*id";
    case AdditiveMap::Node::Kind::Derivation:
        if (!n.t_image.tower())
            return "D[0]";
        return "D[" + n.t_image.tower()->transcendental_name() + " -> " +
               n.t_image.to_string() + "]";
    case AdditiveMap::Node::Kind::Matrix: {
        std::string s = "matrix(";
        for (size_t i = 0; i < n.basis.size(); ++i) {
            if (i)
                s += ", ";
            s += n.basis[i].to_string() + " -> " + n.images[i].to_string();
        }
        return s + ")";
    }
    case AdditiveMap::Node::Kind::Sum: {
        std::string s = "(";
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i)
                s += " + ";
            s += node_describe(*n.children[i]);
        }
        return s + ")";
    }
    case AdditiveMap::Node::Kind::Scale:
        return "(" + n.factor.to_string() + ")*" + node_describe(*n.inner);
    }
    return "?";
}

} // namespace

FieldElement AdditiveMap::eval(const FieldElement& x) const {
    if (!node_)
        fail(Errc::OutOfDomain, "uninitialized map");
    if (!x.tower())
        fail(Errc::OutOfDomain, "uninitialized field element");
    if (!(x.tower() == tower_ || x.tower()->same_as(*tower_))) {
        if (!x.tower()->prefix_of(*tower_))
            fail(Errc::OutOfDomain, "element of " + x.tower()->describe() +
                                        " is outside the map's field " + tower_->describe());
        return eval(x.lift_to(tower_));
    }
    return node_eval(tower_, *node_, x);
}

AdditiveMap AdditiveMap::operator+(const AdditiveMap& o) const {
    if (!node_ || !o.node_)
        fail(Errc::OutOfDomain, "uninitialized map");
    if (!tower_->same_as(*o.tower_))
        fail(Errc::TowerMismatch,
             "maps on " + tower_->describe() + " and " + o.tower_->describe());
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Sum;
    n->children = {node_, o.node_};
    std::optional<std::vector<FieldElement>> span;
    if (span_ && o.span_)
        span = span_intersection(*span_, *o.span_);
    else if (span_)
        span = span_;
    else if (o.span_)
        span = o.span_;
    return AdditiveMap(tower_, std::move(n), std::move(span));
}

AdditiveMap AdditiveMap::scale(const Rational& r) const {
    if (!node_)
        fail(Errc::OutOfDomain, "uninitialized map");
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Scale;
    n->factor = r;
    n->inner = node_;
    return AdditiveMap(tower_, std::move(n), span_);
}

AdditiveMap AdditiveMap::operator-(const AdditiveMap& o) const {
    return *this + o.scale(Rational(-1));
}

const std::vector<FieldElement>& AdditiveMap::span_basis() const {
    if (!span_)
        fail(Errc::OutOfDomain, "map is defined on the whole tower");
    return *span_;
}

bool AdditiveMap::in_domain(const FieldElement& x) const {
    if (!node_ || !x.tower())
        return false;
    const bool same = x.tower() == tower_ || x.tower()->same_as(*tower_);
    if (!same && !x.tower()->prefix_of(*tower_))
        return false;
    if (!span_)
        return true;
    return coordinates_in_span(*span_, x.lift_to(tower_)).has_value();
}

FieldElement AdditiveMap::at_one() const {
    return eval(tower_->one());
}

std::optional<std::vector<FieldElement>> AdditiveMap::derivation_part_images() const {
    if (!node_)
        return std::nullopt;
    return node_dpi(tower_, *node_);
}

std::string AdditiveMap::describe() const {
    if (!node_)
        return "<uninitialized>";
    return node_describe(*node_);
}

AdditiveMap derivation_extend(const TowerPtr& K,
                              const std::map<std::string, FieldElement>& images) {
    auto n = std::make_shared<AdditiveMap::Node>();
    n->kind = AdditiveMap::Node::Kind::Derivation;
    std::map<std::string, FieldElement> rest = images;
    if (K->has_transcendental()) {
        auto it = rest.find(K->transcendental_name());
        if (it == rest.end())
            fail(Errc::MissingImage,
                 "no image supplied for transcendental generator " + K->transcendental_name());
        n->t_image = it->second.lift_to(K);
        rest.erase(it);
    }
    if (!rest.empty())
        fail(Errc::ParameterOutOfRange,
             "image supplied for " + rest.begin()->first +
                 "; algebraic images are forced by the Leibniz rule");

    // Force the algebraic images bottom-up: differentiating p(g) = 0 gives
    // D(g) = -(sum D(a_j) g^j) / p'(g). Each D(a_j) only needs the images of
    // strictly lower levels, which are already in place.
    for (size_t k = 1; k <= K->height(); ++k) {
        const auto& lvl = K->levels()[k - 1];
        const FieldElement g = K->generator(lvl.name);
        FieldElement num = K->zero();
        FieldElement pprime = K->zero();
        for (size_t j = 0; j < lvl.min_poly.size(); ++j) {
            const FieldElement daj = d_eval(K, *n, lvl.min_poly[j]);
            if (!daj.is_zero())
                num += daj * g.pow(static_cast<long>(j));
            if (j >= 1) {
                const FieldElement aj = K->from_value(lvl.min_poly[j]);
                if (!aj.is_zero())
                    pprime += aj * Rational(static_cast<long>(j)) *
                              g.pow(static_cast<long>(j) - 1);
            }
        }
        n->alg_images.push_back(-num / pprime);
    }
    return AdditiveMap(K, std::move(n), std::nullopt);
}

AdditiveMap derivation_extend(const TowerPtr& K, const FieldElement& t_image) {
    if (!K->has_transcendental())
        fail(Errc::MissingImage, "tower " + K->describe() + " has no transcendental generator");
    return derivation_extend(K, {{K->transcendental_name(), t_image}});
}

AdditiveMap derivation_extend(const TowerPtr& K) {
    return derivation_extend(K, std::map<std::string, FieldElement>{});
}

AdditiveMap matrix_map(const std::vector<FieldElement>& basis,
                       const std::vector<FieldElement>& images) {
    if (basis.empty())
        fail(Errc::LengthMismatch, "empty basis");
    if (basis.size() != images.size())
        fail(Errc::LengthMismatch, "basis has " + std::to_string(basis.size()) +
                                       " elements, images " + std::to_string(images.size()));
    if (!q_linearly_independent(basis))
        fail(Errc::DependentBasis, "basis elements are Q-linearly dependent");
    std::vector<FieldElement> all = basis;
    all.insert(all.end(), images.begin(), images.end());
    all = to_common_tower(std::move(all));
    auto n = std::make_shared<AdditiveMap::Node>();
    n->kind = AdditiveMap::Node::Kind::Matrix;
    n->basis.assign(all.begin(), all.begin() + static_cast<long>(basis.size()));
    n->images.assign(all.begin() + static_cast<long>(basis.size()), all.end());
    const TowerPtr K = all[0].tower();
    auto span = n->basis;
    return AdditiveMap(K, std::move(n), std::move(span));
}

std::pair<AdditiveMap, FieldElement> linear_part_split(const AdditiveMap& f) {
    const FieldElement lambda = f.at_one();
    AdditiveMap F = f + AdditiveMap::scaled_identity(-lambda);
    return {std::move(F), lambda};
}

VerdictReport is_derivation_on_samples(const AdditiveMap& f, const SampleSet& samples) {
    const size_t n = samples.size();
    std::vector<std::pair<size_t, size_t>> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            pairs.emplace_back(i, j);
    auto sides = [&](size_t idx) {
        const FieldElement& x = samples.elements[pairs[idx].first];
        const FieldElement& y = samples.elements[pairs[idx].second];
        return std::make_pair(f(x * y), x * f(y) + y * f(x));
    };
    VerdictReport rep = run_identity_check(
        "is_derivation_on_samples", "f(x*y) = x*f(y) + y*f(x)", pairs.size(),
        [&](size_t idx) {
            auto [lhs, rhs] = sides(idx);
            return lhs == rhs;
        },
        [&](size_t idx) {
            auto [lhs, rhs] = sides(idx);
            Witness w;
            w.inputs = {{"x", samples.elements[pairs[idx].first].to_string()},
                        {"y", samples.elements[pairs[idx].second].to_string()}};
            w.lhs = lhs.to_string();
            w.rhs = rhs.to_string();
            return w;
        });
    rep.assumptions = f.tower()->assumptions();
    if (!f.whole_domain())
        rep.notes.push_back("Leibniz rule checked on a Q-span domain only");
    return rep;
}

VerdictReport is_linear_on_samples(const AdditiveMap& f, const SampleSet& samples) {
    const FieldElement f1 = f.at_one();
    auto sides = [&](size_t i) {
        const FieldElement& x = samples.elements[i];
        return std::make_pair(f(x), f1 * x);
    };
    VerdictReport rep = run_identity_check(
        "is_linear_on_samples", "f(x) = f(1)*x", samples.size(),
        [&](size_t i) {
            auto [lhs, rhs] = sides(i);
            return lhs == rhs;
        },
        [&](size_t i) {
            auto [lhs, rhs] = sides(i);
            Witness w;
            w.inputs = {{"x", samples.elements[i].to_string()}};
            w.lhs = lhs.to_string();
            w.rhs = rhs.to_string();
            return w;
        });
    rep.assumptions = f.tower()->assumptions();
    rep.notes.push_back("f(1) = " + f1.to_string());
    return rep;
}

} // namespace derivlab
