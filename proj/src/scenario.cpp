#include "derivlab/scenario.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <ctime>
#include <random>
#include <sstream>

#include <json.hpp>

#include "derivlab/batch.hpp"
#include "derivlab/elem_parse.hpp"
#include "derivlab/error.hpp"
#include "derivlab/samples.hpp"
#include "derivlab/theorems.hpp"

namespace derivlab {

namespace {

const Token& at(const std::vector<Token>& toks, size_t pos) {
    return pos < toks.size() ? toks[pos] : toks.back();
}

bool is_punct(const Token& t, const char* s) {
    return t.kind == Token::Punct && t.text == s;
}

bool at_statement_end(const Token& t) {
    return t.kind == Token::Newline || t.kind == Token::End || is_punct(t, ";");
}

[[noreturn]] void expected(const Token& t, const std::string& what) {
    const std::string got = t.kind == Token::End       ? "end of input"
                            : t.kind == Token::Newline ? "end of line"
                                                       : "'" + t.text + "'";
    throw ParseError(t.line, t.col, "expected " + what + ", got " + got);
}

std::string where(const Token& t) {
    return "line " + std::to_string(t.line) + ", col " + std::to_string(t.col);
}

struct Cursor {
    const std::vector<Token>& toks;
    size_t pos = 0;

    const Token& peek(size_t ahead = 0) const { return at(toks, pos + ahead); }
    const Token& take() { return at(toks, pos++); }
    bool accept_punct(const char* s) {
        if (is_punct(peek(), s)) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_punct(const char* s) {
        if (!accept_punct(s))
            expected(peek(), std::string("'") + s + "'");
    }
    std::string expect_ident(const std::string& what) {
        const Token& t = peek();
        if (t.kind != Token::Ident)
            expected(t, what);
        ++pos;
        return t.text;
    }
    long expect_int(const std::string& what) {
        bool neg = accept_punct("-");
        const Token& t = peek();
        if (t.kind != Token::Int)
            expected(t, what);
        ++pos;
        long v = 0;
        try {
            v = std::stol(t.text);
        } catch (...) {
            throw ParseError(t.line, t.col, what + " out of range");
        }
        return neg ? -v : v;
    }
    Rational expect_rational(const std::string& what) {
        bool neg = accept_punct("-");
        const Token& t = peek();
        if (t.kind != Token::Int)
            expected(t, what);
        ++pos;
        Rational v = Rational::from_string(t.text);
        if (is_punct(peek(), "/") && peek(1).kind == Token::Int) {
            ++pos;
            const Token& d = take();
            const Rational den = Rational::from_string(d.text);
            if (den.is_zero())
                throw ParseError(d.line, d.col, "zero denominator");
            v = v / den;
        }
        return neg ? -v : v;
    }
};

// A map expression evaluates to either a rational scale factor or a map;
// 2*D + 3*id folds the rationals into scales as it goes.
struct MapVal {
    std::optional<Rational> r;
    std::optional<AdditiveMap> m;
};

struct ScenarioParser {
    Cursor c;
    Scenario out;

    bool has_map(const std::string& name) const {
        return std::any_of(out.maps.begin(), out.maps.end(),
                           [&](const auto& p) { return p.first == name; });
    }

    const AdditiveMap& lookup_map(const Token& t) const {
        for (const auto& [name, m] : out.maps)
            if (name == t.text)
                return m;
        fail(Errc::UnknownName, where(t) + ": unknown map '" + t.text + "'");
    }

    const TowerPtr& tower(const Token& t) const {
        if (!out.tower)
            throw ParseError(t.line, t.col, "no tower declared yet");
        return out.tower;
    }

    MapVal parse_map_factor() {
        const Token& t = c.peek();
        if (is_punct(t, "-")) {
            ++c.pos;
            MapVal v = parse_map_factor();
            if (v.r)
                v.r = -*v.r;
            else
                v.m = v.m->scale(Rational(-1));
            return v;
        }
        if (is_punct(t, "(")) {
            ++c.pos;
            MapVal v = parse_map_expr();
            c.expect_punct(")");
            return v;
        }
        if (t.kind == Token::Int) {
            return MapVal{c.expect_rational("a rational"), std::nullopt};
        }
        if (t.kind != Token::Ident)
            expected(t, "a map expression");
        if (t.text == "id") {
            ++c.pos;
            return MapVal{std::nullopt, AdditiveMap::identity(tower(t))};
        }
        if (t.text == "zero") {
            ++c.pos;
            return MapVal{std::nullopt, AdditiveMap::zero(tower(t))};
        }
        if (t.text == "d" && is_punct(c.peek(1), "/") && c.peek(2).kind == Token::Ident &&
            c.peek(2).text.size() > 1 && c.peek(2).text[0] == 'd') {
            return parse_derivation();
        }
        if (t.text == "matrix")
            return parse_matrix();
        ++c.pos;
        return MapVal{std::nullopt, lookup_map(t)};
    }

    // d/dt [with NAME(t) = <element>]
    MapVal parse_derivation() {
        const Token& d = c.take();
        c.expect_punct("/");
        const Token& dgen = c.take();
        const std::string gen = dgen.text.substr(1);
        const TowerPtr& K = tower(d);
        if (!K->has_transcendental() || K->transcendental_name() != gen)
            throw ParseError(dgen.line, dgen.col,
                             K->describe() + " has no transcendental generator '" + gen + "'");
        FieldElement image = K->one();
        if (c.peek().kind == Token::Ident && c.peek().text == "with") {
            ++c.pos;
            c.expect_ident("the map name");
            c.expect_punct("(");
            const Token& g2 = c.peek();
            if (c.expect_ident("the generator name") != gen)
                throw ParseError(g2.line, g2.col, "image must be given for '" + gen + "'");
            c.expect_punct(")");
            c.expect_punct("=");
            image = parse_element_at(c.toks, c.pos, K);
        }
        return MapVal{std::nullopt, derivation_extend(K, {{gen, image}})};
    }

    // matrix basis(e1, ...) images(e1, ...)
    MapVal parse_matrix() {
        const Token& kw = c.take();
        const TowerPtr& K = tower(kw);
        auto element_list = [&](const char* label) {
            if (c.expect_ident("'" + std::string(label) + "'") != label)
                throw ParseError(kw.line, kw.col,
                                 std::string("matrix map needs basis(...) images(...)"));
            c.expect_punct("(");
            std::vector<FieldElement> elems;
            for (;;) {
                elems.push_back(parse_element_at(c.toks, c.pos, K));
                if (c.accept_punct(","))
                    continue;
                c.expect_punct(")");
                return elems;
            }
        };
        auto basis = element_list("basis");
        auto images = element_list("images");
        return MapVal{std::nullopt, matrix_map(basis, images)};
    }

    MapVal parse_map_term() {
        MapVal v = parse_map_factor();
        while (is_punct(c.peek(), "*")) {
            const Token& op = c.take();
            MapVal w = parse_map_factor();
            if (v.r && w.r)
                v.r = *v.r * *w.r;
            else if (v.r && w.m)
                v = MapVal{std::nullopt, w.m->scale(*v.r)};
            else if (v.m && w.r)
                v = MapVal{std::nullopt, v.m->scale(*w.r)};
            else
                throw ParseError(op.line, op.col, "cannot multiply two maps");
        }
        return v;
    }

    MapVal parse_map_expr() {
        MapVal v = parse_map_term();
        for (;;) {
            const Token& op = c.peek();
            const bool plus = is_punct(op, "+");
            if (!plus && !is_punct(op, "-"))
                return v;
            ++c.pos;
            MapVal w = parse_map_term();
            if (w.r)
                w.r = plus ? *w.r : -*w.r;
            else
                w.m = plus ? *w.m : w.m->scale(Rational(-1));
            if (v.r && w.r)
                v.r = *v.r + *w.r;
            else if (v.m && w.m)
                v.m = *v.m + *w.m;
            else
                throw ParseError(op.line, op.col, "cannot add a scalar and a map");
        }
    }

    void parse_map_statement() {
        const Token& name = c.peek();
        const std::string n = c.expect_ident("a map name");
        static const std::vector<std::string> reserved = {"id", "zero", "d", "matrix", "with"};
        if (std::find(reserved.begin(), reserved.end(), n) != reserved.end())
            throw ParseError(name.line, name.col, "'" + n + "' is reserved");
        if (has_map(n))
            fail(Errc::DuplicateName, where(name) + ": map '" + n + "' already defined");
        c.expect_punct("=");
        MapVal v = parse_map_expr();
        if (!v.m)
            throw ParseError(name.line, name.col,
                             "expression defines a scalar, not a map; scale 'id' instead");
        out.maps.emplace_back(n, *v.m);
    }

    MobiusCoeffs parse_mobius() {
        c.expect_punct("(");
        const Rational a = c.expect_rational("the 'a' entry");
        c.expect_punct(",");
        const Rational b = c.expect_rational("the 'b' entry");
        c.expect_punct(";");
        const Rational cc = c.expect_rational("the 'c' entry");
        c.expect_punct(",");
        const Rational d = c.expect_rational("the 'd' entry");
        c.expect_punct(")");
        return MobiusCoeffs(a, b, cc, d);
    }

    void parse_check_statement() {
        const Token& kind = c.peek();
        CheckSpec cs;
        cs.kind = c.expect_ident("a check kind");
        cs.line = kind.line;
        tower(kind);
        while (!at_statement_end(c.peek())) {
            const Token& key = c.peek();
            const std::string k = c.expect_ident("a parameter name");
            if (!c.accept_punct("=") && !c.accept_punct(":"))
                expected(c.peek(), "'=' after '" + k + "'");
            if (k == "f" || k == "g" || k == "F") {
                const Token& val = c.peek();
                const std::string mn = c.expect_ident("a map name");
                lookup_map(val);
                cs.map_args[k] = mn;
            } else if (k == "n" || k == "m" || k == "k") {
                cs.ints[k] = c.expect_int("an integer for '" + k + "'");
            } else if (k == "c" || k == "kappa" || k == "alpha" || k == "beta") {
                cs.rats[k] = c.expect_rational("a rational for '" + k + "'");
            } else if (k == "M") {
                cs.M = parse_mobius();
            } else if (k == "samples") {
                const long v = c.expect_int("a sample count");
                if (v <= 0)
                    throw ParseError(key.line, key.col, "sample count must be positive");
                cs.samples = static_cast<size_t>(v);
            } else if (k == "expect") {
                const Token& val = c.peek();
                const std::string e = c.expect_ident("'pass' or 'fail'");
                if (e == "pass")
                    cs.expect = Expectation::Pass;
                else if (e == "fail")
                    cs.expect = Expectation::Fail;
                else
                    throw ParseError(val.line, val.col, "expect must be 'pass' or 'fail'");
            } else {
                throw ParseError(key.line, key.col,
                                 "unknown parameter '" + k + "' for check " + cs.kind);
            }
        }
        validate_check(cs, kind);
        out.checks.push_back(std::move(cs));
    }

    void require(const CheckSpec& cs, const Token& kind, const std::string& key) const {
        const bool have = cs.map_args.count(key) || cs.ints.count(key) || cs.rats.count(key) ||
                          (key == "M" && cs.M.has_value());
        if (!have)
            throw ParseError(kind.line, kind.col,
                             "check " + cs.kind + " requires parameter '" + key + "'");
    }

    void out_of_range(const Token& kind, const std::string& msg) const {
        fail(Errc::ParameterOutOfRange, where(kind) + ": " + msg);
    }

    void validate_check(const CheckSpec& cs, const Token& kind) const {
        auto need = [&](std::initializer_list<const char*> keys) {
            for (const char* k : keys)
                require(cs, kind, k);
        };
        const auto n = [&] { return cs.ints.at("n"); };
        const auto m = [&] { return cs.ints.at("m"); };
        if (cs.kind == "power_rule") {
            need({"f", "k"});
            if (cs.ints.at("k") == 0)
                out_of_range(kind, "power_rule needs k != 0");
        } else if (cs.kind == "reciprocal" || cs.kind == "linear" || cs.kind == "derivation") {
            need({"f"});
        } else if (cs.kind == "nishiyama") {
            need({"f", "c", "n", "m", "k"});
        } else if (cs.kind == "theorem1" || cs.kind == "lemma21" || cs.kind == "phi_power") {
            need({"f", "n", "m"});
            if (cs.kind == "lemma21")
                require(cs, kind, "kappa");
            else
                require(cs, kind, "g");
            if (n() == 0 || m() == 0)
                out_of_range(kind, cs.kind + " needs nonzero n and m");
            if (n() == m())
                out_of_range(kind, cs.kind + " needs n != m");
            if (cs.kind == "phi_power" && n() != -m() && (n() > 0) != (m() > 0))
                out_of_range(kind, "phi_power needs n = -m or matching signs");
        } else if (cs.kind == "chi") {
            need({"f", "g"});
        } else if (cs.kind == "thm22_forward") {
            need({"F", "alpha", "beta", "n", "M"});
            if (n() == 0)
                out_of_range(kind, "thm22_forward needs n != 0");
            if (cs.M->det().is_zero())
                out_of_range(kind, "M must be invertible");
            if (cs.M->c.is_zero() && n() == 1)
                out_of_range(kind, "c = 0 requires n != 1");
            if (cs.M->d.is_zero() && n() == -1)
                out_of_range(kind, "d = 0 requires n != -1");
        } else if (cs.kind == "star" || cs.kind == "triangle") {
            need({"f", "g", "n", "M"});
            if (n() == 0)
                out_of_range(kind, cs.kind + " needs n != 0");
            if (cs.M->det().is_zero())
                out_of_range(kind, "M must be invertible");
        } else if (cs.kind == "linearity") {
            need({"f", "n"});
            if (n() < 2)
                out_of_range(kind, "linearity needs n >= 2");
        } else {
            fail(Errc::UnknownName, where(kind) + ": unknown check kind '" + cs.kind + "'");
        }
    }

    void parse_tower_statement(const Token& kw) {
        if (out.tower)
            throw ParseError(kw.line, kw.col, "tower already declared");
        // the irreducibility waiver must be known before building, so scan
        // ahead to the end of the statement for it
        bool assume = false;
        for (size_t look = c.pos; !at_statement_end(at(c.toks, look)); ++look)
            if (at(c.toks, look).kind == Token::Ident &&
                at(c.toks, look).text == "assume_irreducible")
                assume = true;
        out.tower = parse_tower_at(c.toks, c.pos, assume);
        if (c.peek().kind == Token::Ident && c.peek().text == "assume_irreducible")
            ++c.pos;
    }

    void run() {
        for (;;) {
            while (c.peek().kind == Token::Newline || is_punct(c.peek(), ";"))
                ++c.pos;
            if (c.peek().kind == Token::End)
                break;
            const Token& kw = c.peek();
            const std::string stmt = c.expect_ident("a statement keyword");
            if (stmt == "tower") {
                parse_tower_statement(kw);
            } else if (stmt == "map") {
                tower(kw);
                parse_map_statement();
            } else if (stmt == "samples") {
                const long v = c.expect_int("a sample count");
                if (v <= 0)
                    throw ParseError(kw.line, kw.col, "sample count must be positive");
                out.default_samples = static_cast<size_t>(v);
            } else if (stmt == "check") {
                parse_check_statement();
            } else {
                throw ParseError(kw.line, kw.col, "unknown statement '" + stmt + "'");
            }
            if (!at_statement_end(c.peek()))
                expected(c.peek(), "end of statement");
        }
        if (!out.tower)
            throw ParseError(1, 1, "scenario declares no tower");
    }
};

SampleSet build_samples(const TowerPtr& K, size_t count, std::uint64_t seed) {
    SampleSet s = default_samples(K, count);
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        SampleSet extra = random_samples(K, count, rng);
        for (const auto& e : extra.elements)
            if (std::find(s.elements.begin(), s.elements.end(), e) == s.elements.end())
                s.elements.push_back(e);
        s.constraints.push_back("seeded random extension");
    }
    return s;
}

struct SerialGuard {
    bool prev;
    explicit SerialGuard(bool v) : prev(serial_batches()) { set_serial_batches(v); }
    ~SerialGuard() { set_serial_batches(prev); }
};

VerdictReport dispatch(const Scenario& s, const CheckSpec& cs, const SampleSet& samples,
                       const RunOptions& opt) {
    auto role = [&](const char* r) -> const AdditiveMap& {
        return s.map_named(cs.map_args.at(r));
    };
    auto n = [&] { return cs.ints.at("n"); };
    auto m = [&] { return cs.ints.at("m"); };
    try {
        if (cs.kind == "power_rule")
            return check_power_rule(role("f"), cs.ints.at("k"), samples);
        if (cs.kind == "reciprocal")
            return check_jurkat_kurepa(role("f"), samples);
        if (cs.kind == "linear")
            return is_linear_on_samples(role("f"), samples);
        if (cs.kind == "derivation")
            return is_derivation_on_samples(role("f"), samples);
        if (cs.kind == "nishiyama")
            return check_nishiyama(role("f"), cs.rats.at("c"), n(), m(), cs.ints.at("k"),
                                   samples);
        if (cs.kind == "theorem1")
            return check_theorem1(role("f"), role("g"), n(), m(), samples);
        if (cs.kind == "phi_power")
            return verify_phi_power(role("f"), role("g"), n(), m(), samples);
        if (cs.kind == "chi")
            return chi_transform_identity(role("f"), role("g"), samples);
        if (cs.kind == "lemma21")
            return lemma21_composite(role("f"), cs.rats.at("kappa"), n(), m(), samples);
        if (cs.kind == "thm22_forward")
            return verify_thm22_forward(role("F"), cs.rats.at("alpha"), cs.rats.at("beta"), n(),
                                        *cs.M, mobius_pole_free(samples, *cs.M, n()));
        if (cs.kind == "star")
            return check_star(role("f"), role("g"), n(), *cs.M,
                              mobius_pole_free(samples, *cs.M, n()));
        if (cs.kind == "triangle") {
            const AdditiveMap& outer = opt.swap_mobius_roles ? role("g") : role("f");
            const AdditiveMap& inner = opt.swap_mobius_roles ? role("f") : role("g");
            auto rep = check_triangle(outer, inner, n(), *cs.M,
                                      mobius_pole_free(samples, *cs.M, n()));
            if (opt.swap_mobius_roles)
                rep.notes.push_back("f and g roles swapped by option");
            return rep;
        }
        if (cs.kind == "linearity")
            return check_linearity_theorem(role("f"), n(), samples);
        fail(Errc::UnknownName, "unknown check kind '" + cs.kind + "'");
    } catch (const Error& e) {
        VerdictReport rep;
        rep.check = cs.kind;
        rep.status = Status::ERROR;
        rep.error = e.what();
        return rep;
    }
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* expect_name(Expectation e) { return e == Expectation::Pass ? "pass" : "fail"; }

} // namespace

const AdditiveMap& Scenario::map_named(const std::string& name) const {
    for (const auto& [n, m] : maps)
        if (n == name)
            return m;
    fail(Errc::UnknownName, "unknown map '" + name + "'");
}

Scenario parse_scenario(const std::string& text) {
    const auto toks = lex_source(text);
    ScenarioParser p{Cursor{toks, 0}, Scenario{}};
    p.run();
    return std::move(p.out);
}

ScenarioResult run_scenario(const Scenario& s, const RunOptions& opt) {
    SerialGuard guard(opt.serial);
    const size_t count = opt.samples.value_or(s.default_samples.value_or(20));
    ScenarioResult res;
    res.samples_used = count;
    const SampleSet base = build_samples(s.tower, count, opt.seed);
    for (const auto& cs : s.checks) {
        const SampleSet& samples =
            cs.samples ? build_samples(s.tower, *cs.samples, opt.seed) : base;
        VerdictReport rep = dispatch(s, cs, samples, opt);
        const Status wanted = cs.expect == Expectation::Pass ? Status::PASS : Status::FAIL;
        const bool met = rep.status == wanted;
        res.outcomes.push_back(CheckOutcome{&cs, std::move(rep), met});
    }
    res.all_met = std::all_of(res.outcomes.begin(), res.outcomes.end(),
                              [](const CheckOutcome& o) { return o.expectation_met; });
    return res;
}

namespace {

nlohmann::ordered_json witness_json(const Witness& w) {
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    for (const auto& [name, value] : w.inputs)
        inputs.push_back({{"name", name}, {"value", value}});
    return {{"inputs", inputs}, {"lhs", w.lhs}, {"rhs", w.rhs}};
}

} // namespace

std::string render_json(const Scenario& s, const ScenarioResult& r, const RunOptions& opt) {
    using njson = nlohmann::ordered_json;
    njson doc;
    doc["schema"] = 1;
    doc["tool"] = "derivlab";
    doc["version"] = derivlab_version;
    if (!s.name.empty())
        doc["scenario"] = s.name;
    if (!s.anchor.empty())
        doc["anchor"] = s.anchor;
    if (!opt.no_timestamp)
        doc["timestamp"] = iso_timestamp();
    doc["tower"] = s.tower->describe();
    doc["assumptions"] = s.tower->assumptions();
    doc["options"] = njson{{"seed", opt.seed},
                           {"samples", r.samples_used},
                           {"serial", opt.serial},
                           {"swap_mobius_roles", opt.swap_mobius_roles}};
    njson checks = njson::array();
    for (size_t i = 0; i < r.outcomes.size(); ++i) {
        const CheckOutcome& o = r.outcomes[i];
        njson entry;
        entry["id"] = i + 1;
        entry["kind"] = o.spec->kind;
        entry["check"] = o.report.check;
        entry["anchor"] = o.report.anchor;
        entry["status"] = status_name(o.report.status);
        entry["expect"] = expect_name(o.spec->expect);
        entry["expectation_met"] = o.expectation_met;
        entry["samples_tested"] = o.report.samples_tested;
        entry["witness"] = o.report.witness ? witness_json(*o.report.witness) : njson(nullptr);
        entry["assumptions"] = o.report.assumptions;
        njson subs = njson::array();
        for (const auto& sv : o.report.sub_verdicts) {
            njson sj;
            sj["name"] = sv.name;
            sj["status"] = status_name(sv.status);
            sj["note"] = sv.note;
            sj["witness"] = sv.witness ? witness_json(*sv.witness) : njson(nullptr);
            subs.push_back(std::move(sj));
        }
        entry["sub_verdicts"] = std::move(subs);
        entry["notes"] = o.report.notes;
        entry["error"] = o.report.error;
        checks.push_back(std::move(entry));
    }
    doc["checks"] = std::move(checks);
    doc["all_expectations_met"] = r.all_met;
    return doc.dump(2) + "\n";
}

std::string render_text(const Scenario& s, const ScenarioResult& r, const RunOptions& opt) {
    std::ostringstream os;
    if (!s.name.empty())
        os << "scenario " << s.name << "\n";
    if (!s.anchor.empty())
        os << "anchor   " << s.anchor << "\n";
    os << "tower    " << s.tower->describe() << "\n";
    for (const auto& a : s.tower->assumptions())
        os << "assume   " << a << "\n";
    os << "options  seed=" << opt.seed << " samples=" << r.samples_used
       << (opt.serial ? " serial" : "") << (opt.swap_mobius_roles ? " swap-mobius-roles" : "")
       << "\n\n";

    std::vector<std::array<std::string, 6>> rows;
    rows.push_back({"#", "kind", "status", "expect", "met", "tested"});
    for (size_t i = 0; i < r.outcomes.size(); ++i) {
        const CheckOutcome& o = r.outcomes[i];
        rows.push_back({std::to_string(i + 1), o.spec->kind, status_name(o.report.status),
                        expect_name(o.spec->expect), o.expectation_met ? "yes" : "NO",
                        std::to_string(o.report.samples_tested)});
    }
    std::array<size_t, 6> width{};
    for (const auto& row : rows)
        for (size_t j = 0; j < row.size(); ++j)
            width[j] = std::max(width[j], row[j].size());
    for (const auto& row : rows) {
        os << " ";
        for (size_t j = 0; j < row.size(); ++j) {
            os << " " << row[j] << std::string(width[j] - row[j].size(), ' ');
        }
        os << "\n";
    }
    os << "\n";

    for (size_t i = 0; i < r.outcomes.size(); ++i) {
        const CheckOutcome& o = r.outcomes[i];
        os << "[" << (i + 1) << "] " << o.report.check << ": " << o.report.anchor << "\n";
        if (o.report.status == Status::ERROR)
            os << "    error: " << o.report.error << "\n";
        if (o.report.witness) {
            const Witness& w = *o.report.witness;
            os << "    witness:";
            for (const auto& [name, value] : w.inputs)
                os << " " << name << " = " << value << ",";
            os << " lhs = " << w.lhs << ", rhs = " << w.rhs << "\n";
        }
        for (const auto& sv : o.report.sub_verdicts) {
            os << "    [" << sv.name << "] " << status_name(sv.status);
            if (!sv.note.empty())
                os << "  " << sv.note;
            os << "\n";
        }
        for (const auto& note : o.report.notes)
            os << "    note: " << note << "\n";
    }
    os << "\nresult: "
       << (r.all_met ? "all expectations met"
                     : std::to_string(std::count_if(
                           r.outcomes.begin(), r.outcomes.end(),
                           [](const CheckOutcome& o) { return !o.expectation_met; })) +
                           " expectation(s) violated")
       << "\n";
    return os.str();
}

} // namespace derivlab
