#include "coincide/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "coincide/errors.hpp"
#include "coincide/iterate.hpp"
#include "coincide/oracle.hpp"

namespace coincide {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& tok, int line) {
    if (tok == "inf" || tok == "+inf") return kInf;
    if (tok == "-inf") return -kInf;
    auto parse_plain = [&](const std::string& t) {
        const char* begin = t.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end != begin + t.size() || t.empty()) {
            throw parse_error(line, "bad number '" + tok + "'");
        }
        return v;
    };
    std::size_t slash = tok.find('/');
    if (slash != std::string::npos && slash > 0 && slash + 1 < tok.size()) {
        double num = parse_plain(tok.substr(0, slash));
        double den = parse_plain(tok.substr(slash + 1));
        if (den == 0.0) throw parse_error(line, "zero denominator in '" + tok + "'");
        return num / den;
    }
    return parse_plain(tok);
}

std::size_t parse_count(const std::string& tok, int line) {
    double v = parse_number(tok, line);
    if (v < 0.0 || v != std::floor(v)) {
        throw parse_error(line, "expected a nonnegative integer, got '" + tok + "'");
    }
    return static_cast<std::size_t>(v);
}

// ---------------------------------------------------------------------------
// Raw section structure

struct RawEntry {
    std::string key;
    std::string value;
    int line = 0;
    std::vector<std::pair<std::string, int>> rows;
};

struct RawSection {
    std::string name;
    int line = 0;
    std::vector<RawEntry> entries;

    const RawEntry* find(const std::string& key) const {
        for (const RawEntry& e : entries) {
            if (e.key == key) return &e;
        }
        return nullptr;
    }
    const RawEntry& require(const std::string& key) const {
        const RawEntry* e = find(key);
        if (!e) throw parse_error(line, "[" + name + "] is missing key '" + key + "'");
        return *e;
    }
};

std::vector<RawSection> parse_raw(const std::string& text) {
    std::vector<RawSection> sections;
    std::istringstream is(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(is, raw_line)) {
        ++line_no;
        std::string line = raw_line;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw parse_error(line_no, "unterminated section header");
            RawSection s;
            s.name = trim(line.substr(1, line.size() - 2));
            s.line = line_no;
            if (s.name.empty()) throw parse_error(line_no, "empty section name");
            for (const RawSection& seen : sections) {
                if (seen.name == s.name) {
                    throw parse_error(line_no, "duplicate section [" + s.name + "]");
                }
            }
            sections.push_back(std::move(s));
            continue;
        }
        if (sections.empty()) throw parse_error(line_no, "content before first section");
        std::size_t eq = line.find('=');
        if (eq != std::string::npos) {
            RawEntry e;
            e.key = trim(line.substr(0, eq));
            e.value = trim(line.substr(eq + 1));
            e.line = line_no;
            if (e.key.empty()) throw parse_error(line_no, "empty key");
            sections.back().entries.push_back(std::move(e));
        } else {
            if (sections.back().entries.empty()) {
                throw parse_error(line_no, "data row without a preceding key");
            }
            sections.back().entries.back().rows.emplace_back(line, line_no);
        }
    }
    return sections;
}

// ---------------------------------------------------------------------------
// Section interpretation

Space parse_space(const RawSection& sec) {
    std::string kind = sec.require("kind").value;
    if (kind == "interval") {
        double lo = parse_number(sec.require("lo").value, sec.require("lo").line);
        double hi = parse_number(sec.require("hi").value, sec.require("hi").line);
        return Space::interval(lo, hi);
    }
    if (kind == "finite") {
        const RawEntry& pts = sec.require("points");
        std::vector<std::string> labels = split_ws(pts.value);
        if (labels.empty()) throw parse_error(pts.line, "no points listed");
        const RawEntry& dist = sec.require("dist");
        const std::size_t n = labels.size();
        if (dist.rows.size() != n) {
            throw parse_error(dist.line, "expected " + std::to_string(n) + " distance rows");
        }
        std::vector<double> d(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            auto toks = split_ws(dist.rows[i].first);
            if (toks.size() != n) {
                throw parse_error(dist.rows[i].second,
                                  "expected " + std::to_string(n) + " entries in distance row");
            }
            for (std::size_t j = 0; j < n; ++j) {
                d[i * n + j] = parse_number(toks[j], dist.rows[i].second);
            }
        }
        return Space::finite(std::move(labels), std::move(d));
    }
    throw parse_error(sec.require("kind").line, "unknown space kind '" + kind + "'");
}

std::size_t parse_point_index(const Space& s, const std::string& tok, int line) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.label(i) == tok) return i;
    }
    double v = parse_number(tok, line);
    if (v >= 0.0 && v == std::floor(v) && static_cast<std::size_t>(v) < s.size()) {
        return static_cast<std::size_t>(v);
    }
    throw parse_error(line, "unknown point '" + tok + "'");
}

Map parse_primitive_map(const std::vector<std::string>& toks, std::size_t& pos, int line) {
    if (pos >= toks.size()) throw parse_error(line, "missing map");
    const std::string kw = toks[pos++];
    auto next_num = [&]() {
        if (pos >= toks.size()) throw parse_error(line, "map '" + kw + "' missing parameter");
        return parse_number(toks[pos++], line);
    };
    if (kw == "identity") return Map::identity();
    if (kw == "affine") {
        double a = next_num();
        double b = next_num();
        return Map::affine(a, b);
    }
    if (kw == "scale") return Map::scale(next_num());
    if (kw == "reciprocal") return Map::reciprocal();
    if (kw == "exp-decay") return Map::exp_decay();
    if (kw == "exp-growth") return Map::exp_growth();
    if (kw == "log-form") return Map::log_form(next_num());
    if (kw == "sqrt") return Map::sqrt_map();
    if (kw == "square") return Map::square();
    throw parse_error(line, "unknown map '" + kw + "'");
}

Map parse_map(const std::string& value, int line, const Space* space) {
    std::vector<std::string> toks = split_ws(value);
    if (toks.empty()) throw parse_error(line, "empty map");
    std::size_t pos = 0;
    if (toks[0] == "table") {
        if (!space || !space->is_finite()) {
            throw parse_error(line, "table maps require a finite space");
        }
        std::vector<std::size_t> image;
        for (pos = 1; pos < toks.size(); ++pos) {
            image.push_back(parse_point_index(*space, toks[pos], line));
        }
        if (image.size() != space->size()) {
            throw parse_error(line, "table must list one image per point");
        }
        return Map::table(std::move(image));
    }
    if (toks[0] == "piecewise") {
        pos = 1;
        std::vector<Map::Piece> pieces;
        while (pos < toks.size()) {
            double upper;
            if (toks[pos] == "rest") {
                upper = kInf;
                ++pos;
            } else if (toks[pos] == "upto") {
                ++pos;
                if (pos >= toks.size()) throw parse_error(line, "'upto' missing bound");
                upper = parse_number(toks[pos++], line);
            } else {
                throw parse_error(line, "expected 'upto <b>' or 'rest' in piecewise map");
            }
            if (pos >= toks.size() || toks[pos] != ":") {
                throw parse_error(line, "expected ':' after piecewise bound");
            }
            ++pos;
            Map branch = parse_primitive_map(toks, pos, line);
            pieces.push_back({upper, std::move(branch)});
            if (pos < toks.size()) {
                if (toks[pos] != "|") throw parse_error(line, "expected '|' between pieces");
                ++pos;
            }
        }
        try {
            return Map::piecewise(std::move(pieces));
        } catch (const std::invalid_argument& e) {
            throw parse_error(line, e.what());
        }
    }
    Map m = parse_primitive_map(toks, pos, line);
    if (pos != toks.size()) throw parse_error(line, "trailing tokens after map");
    return m;
}

ComparisonFunction parse_psi(const RawSection& sec) {
    std::string kind = sec.require("kind").value;
    if (kind == "linear") {
        const RawEntry& lam = sec.require("lambda");
        try {
            return ComparisonFunction::linear(parse_number(lam.value, lam.line));
        } catch (const std::invalid_argument& e) {
            throw parse_error(lam.line, e.what());
        }
    }
    if (kind == "table") {
        const RawEntry& knots = sec.require("knots");
        std::vector<ComparisonFunction::Knot> ks;
        for (const auto& [row, row_line] : knots.rows) {
            auto toks = split_ws(row);
            if (toks.size() != 2) throw parse_error(row_line, "knot rows are 't value'");
            ks.push_back({parse_number(toks[0], row_line), parse_number(toks[1], row_line)});
        }
        try {
            return ComparisonFunction::table(std::move(ks));
        } catch (const std::invalid_argument& e) {
            throw parse_error(knots.line, e.what());
        }
    }
    throw parse_error(sec.require("kind").line, "unknown psi kind '" + kind + "'");
}

AlphaFunction parse_alpha_form(const RawEntry& form, const Space* space,
                               Scenario::AlphaSource& source) {
    std::vector<std::string> toks = split_ws(form.value);
    if (toks.empty()) throw parse_error(form.line, "empty alpha form");
    const std::string& kw = toks[0];
    source = Scenario::AlphaSource::Explicit;
    auto num = [&](std::size_t i) {
        if (i >= toks.size()) throw parse_error(form.line, "alpha form missing parameter");
        return parse_number(toks[i], form.line);
    };
    if (kw == "constant") return AlphaFunction::constant(num(1));
    if (kw == "box") {
        return AlphaFunction::box(num(1), num(2), num(3), num(4), num(5), num(6));
    }
    if (kw == "threshold") {
        if (toks.size() != 4) {
            throw parse_error(form.line, "threshold form is 'threshold <rel> <v1> <v2>'");
        }
        AlphaFunction::Rel rel;
        if (toks[1] == "gt") {
            rel = AlphaFunction::Rel::Gt;
        } else if (toks[1] == "ge") {
            rel = AlphaFunction::Rel::Ge;
        } else if (toks[1] == "lt") {
            rel = AlphaFunction::Rel::Lt;
        } else if (toks[1] == "le") {
            rel = AlphaFunction::Rel::Le;
        } else {
            throw parse_error(form.line, "unknown relation '" + toks[1] + "'");
        }
        return AlphaFunction::threshold(rel, num(2), num(3));
    }
    if (kw == "matrix") {
        if (!space || !space->is_finite()) {
            throw parse_error(form.line, "matrix alpha requires a finite space");
        }
        const std::size_t n = space->size();
        if (form.rows.size() != n) {
            throw parse_error(form.line, "expected " + std::to_string(n) + " alpha rows");
        }
        std::vector<double> values(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            auto row_toks = split_ws(form.rows[i].first);
            if (row_toks.size() != n) {
                throw parse_error(form.rows[i].second, "bad alpha row width");
            }
            for (std::size_t j = 0; j < n; ++j) {
                values[i * n + j] = parse_number(row_toks[j], form.rows[i].second);
            }
        }
        return AlphaFunction::matrix(n, std::move(values));
    }
    throw parse_error(form.line, "unknown alpha form '" + kw + "'");
}

PartialOrder parse_order(const RawSection& sec, const Space* space) {
    std::string kind = sec.require("kind").value;
    if (kind == "standard-leq") return PartialOrder::standard_leq();
    if (kind == "matrix") {
        if (!space || !space->is_finite()) {
            throw parse_error(sec.line, "matrix order requires a finite space");
        }
        const RawEntry& rel = sec.require("rel");
        const std::size_t n = space->size();
        if (rel.rows.size() != n) {
            throw parse_error(rel.line, "expected " + std::to_string(n) + " relation rows");
        }
        std::vector<std::uint8_t> r(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            auto toks = split_ws(rel.rows[i].first);
            if (toks.size() != n) throw parse_error(rel.rows[i].second, "bad relation row width");
            for (std::size_t j = 0; j < n; ++j) {
                r[i * n + j] = parse_number(toks[j], rel.rows[i].second) != 0.0 ? 1 : 0;
            }
        }
        return PartialOrder::matrix(n, std::move(r));
    }
    throw parse_error(sec.require("kind").line, "unknown order kind '" + kind + "'");
}

CyclicPartition parse_partition(const RawSection& sec, const Space* space) {
    if (!space) throw parse_error(sec.line, "[partition] requires a [space]");
    const RawEntry& a1 = sec.require("a1");
    const RawEntry& a2 = sec.require("a2");
    if (space->is_finite()) {
        auto parse_set = [&](const RawEntry& e) {
            std::vector<std::size_t> out;
            for (const std::string& tok : split_ws(e.value)) {
                out.push_back(parse_point_index(*space, tok, e.line));
            }
            return out;
        };
        return CyclicPartition::finite_sets(parse_set(a1), parse_set(a2));
    }
    auto parse_interval = [&](const RawEntry& e) {
        auto toks = split_ws(e.value);
        if (toks.size() != 2) throw parse_error(e.line, "interval subsets are 'lo hi'");
        return ClosedInterval{parse_number(toks[0], e.line), parse_number(toks[1], e.line)};
    };
    return CyclicPartition::intervals(parse_interval(a1), parse_interval(a2));
}

Point parse_point(const Space& s, const std::string& tok, int line) {
    if (s.is_finite()) return Point::index(parse_point_index(s, tok, line));
    return Point::coord(parse_number(tok, line));
}

const std::vector<std::string> kKnownChecks = {
    "space-valid",        "psi-membership",
    "contractive",        "alpha-admissible",
    "alpha-admissible-wrt-g", "range-inclusion",
    "initial-point",      "self-mapping",
    "g-range-closed",     "order-valid",
    "g-nondecreasing",    "g-regular",
    "partition-valid",    "g-images-closed",
    "f(A1)-within-g(A2)", "f(A2)-within-g(A1)",
    "g-injective",        "direct-form",
    "generalized-form",   "dominance",
    "direct-implies-generalized",
};

bool corollary_needs_psi(const std::string& kind) {
    return kind == "berinde" || kind == "ordered" || kind == "cyclic";
}

std::vector<std::string> auto_checks(const Scenario& sc) {
    std::vector<std::string> out;
    bool pair_ready = sc.f && sc.g;
    bool alpha_ready = sc.alpha_source != Scenario::AlphaSource::None;
    out.push_back("space-valid");
    if (sc.psi) out.push_back("psi-membership");
    if (pair_ready && alpha_ready && sc.psi) out.push_back("contractive");
    if (pair_ready && alpha_ready) out.push_back("alpha-admissible-wrt-g");
    if (pair_ready) out.push_back("range-inclusion");
    if (pair_ready && alpha_ready && sc.run.x0) out.push_back("initial-point");
    if (pair_ready) out.push_back("self-mapping");
    if (sc.g && sc.space && !sc.space->is_finite()) out.push_back("g-range-closed");
    if (sc.order) {
        out.push_back("order-valid");
        if (pair_ready) {
            out.push_back("g-nondecreasing");
            out.push_back("g-regular");
        }
    }
    if (sc.partition) {
        out.push_back("partition-valid");
        if (pair_ready) {
            out.push_back("g-images-closed");
            out.push_back("f(A1)-within-g(A2)");
            out.push_back("f(A2)-within-g(A1)");
            out.push_back("g-injective");
        }
    }
    if (sc.corollary && pair_ready) {
        out.push_back("direct-form");
        out.push_back("generalized-form");
        out.push_back("dominance");
        out.push_back("direct-implies-generalized");
    }
    return out;
}

void validate_check_requirements(const Scenario& sc, const std::string& name, int line) {
    bool pair_ready = sc.f && sc.g;
    bool alpha_ready = sc.alpha_source != Scenario::AlphaSource::None;
    auto need = [&](bool ok, const char* what) {
        if (!ok) {
            throw parse_error(line, "check '" + name + "' requires " + what);
        }
    };
    if (name == "psi-membership" || name == "contractive") need(sc.psi.has_value(), "[psi]");
    if (name == "contractive" || name == "alpha-admissible" ||
        name == "alpha-admissible-wrt-g" || name == "initial-point") {
        need(alpha_ready, "an [alpha] section");
    }
    if (name == "alpha-admissible") need(sc.f.has_value(), "a pair with f");
    if (name == "contractive" || name == "alpha-admissible-wrt-g" ||
        name == "range-inclusion" || name == "self-mapping" || name == "initial-point" ||
        name == "g-nondecreasing" || name == "g-regular" || name == "g-images-closed" ||
        name == "f(A1)-within-g(A2)" || name == "f(A2)-within-g(A1)" ||
        name == "g-injective" || name == "direct-form" || name == "generalized-form" ||
        name == "dominance" || name == "direct-implies-generalized") {
        need(pair_ready, "a [pair] section");
    }
    if (name == "initial-point") need(sc.run.x0.has_value(), "x0 in [run]");
    if (name == "order-valid" || name == "g-nondecreasing" || name == "g-regular") {
        need(sc.order.has_value(), "an [order] section");
    }
    if (name == "partition-valid" || name == "g-images-closed" ||
        name == "f(A1)-within-g(A2)" || name == "f(A2)-within-g(A1)" ||
        name == "g-injective") {
        need(sc.partition.has_value(), "a [partition] section");
    }
    if (name == "direct-form" || name == "generalized-form" || name == "dominance" ||
        name == "direct-implies-generalized") {
        need(sc.corollary.has_value(), "a [corollary] section");
        if (corollary_needs_psi(sc.corollary->kind)) need(sc.psi.has_value(), "[psi]");
        if (sc.corollary->kind == "ordered") need(sc.order.has_value(), "an [order] section");
        if (sc.corollary->kind == "cyclic") {
            need(sc.partition.has_value(), "a [partition] section");
        }
    }
}

void validate_scenario(const Scenario& sc, int run_line) {
    bool pair_ready = sc.f && sc.g;
    bool alpha_ready = sc.alpha_source != Scenario::AlphaSource::None;
    auto need = [&](bool ok, const char* what) {
        if (!ok) throw parse_error(run_line, std::string("missing ") + what);
    };
    if (sc.alpha_source == Scenario::AlphaSource::FromOrder) {
        need(sc.order.has_value(), "[order] section for alpha form from-order");
    }
    if (sc.alpha_source == Scenario::AlphaSource::FromCyclic) {
        need(sc.partition.has_value(), "[partition] section for alpha form from-cyclic");
        need(sc.g.has_value(), "g map for alpha form from-cyclic");
    }
    switch (sc.run.mode) {
        case RunSpec::Mode::Iterate:
            need(sc.space.has_value(), "[space] section");
            need(pair_ready, "[pair] section");
            need(alpha_ready, "[alpha] section");
            need(sc.psi.has_value(), "[psi] section");
            need(sc.run.x0.has_value(), "x0 in [run] (iterate mode)");
            if (!sc.space->is_finite()) {
                need(sc.g_inverse.has_value(), "g_inverse in [pair] (interval iterate)");
            }
            break;
        case RunSpec::Mode::Oracle:
            need(sc.space.has_value(), "[space] section");
            if (!sc.space->is_finite()) {
                throw parse_error(run_line, "oracle mode requires a finite space");
            }
            need(pair_ready, "[pair] section");
            need(alpha_ready, "[alpha] section");
            need(sc.psi.has_value(), "[psi] section");
            break;
        case RunSpec::Mode::Check: {
            need(sc.space.has_value(), "[space] section");
            std::vector<std::string> list =
                sc.run.checks.empty() ? auto_checks(sc) : sc.run.checks;
            for (const std::string& name : list) {
                if (std::find(kKnownChecks.begin(), kKnownChecks.end(), name) ==
                    kKnownChecks.end()) {
                    throw parse_error(run_line, "unknown check '" + name + "'");
                }
                validate_check_requirements(sc, name, run_line);
            }
            break;
        }
        case RunSpec::Mode::Falsify:
            break;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Parse + serialize

Scenario parse_scenario(const std::string& text) {
    std::vector<RawSection> sections = parse_raw(text);
    Scenario sc;
    const RawSection* run_sec = nullptr;

    auto find_section = [&](const std::string& name) -> const RawSection* {
        for (const RawSection& s : sections) {
            if (s.name == name) return &s;
        }
        return nullptr;
    };

    for (const RawSection& s : sections) {
        static const std::vector<std::string> known = {"space", "pair",      "alpha", "psi",
                                                       "order", "partition", "corollary", "run"};
        if (std::find(known.begin(), known.end(), s.name) == known.end()) {
            throw parse_error(s.line, "unknown section [" + s.name + "]");
        }
    }

    if (const RawSection* s = find_section("space")) sc.space = parse_space(*s);
    const Space* space = sc.space ? &*sc.space : nullptr;

    if (const RawSection* s = find_section("pair")) {
        if (const RawEntry* e = s->find("f")) sc.f = parse_map(e->value, e->line, space);
        if (const RawEntry* e = s->find("g")) sc.g = parse_map(e->value, e->line, space);
        if (const RawEntry* e = s->find("g_inverse")) {
            sc.g_inverse = parse_map(e->value, e->line, space);
        }
        if (const RawEntry* e = s->find("g_range_closed")) {
            sc.g_range_closed_declared = e->value == "true" || e->value == "1";
        }
    }

    if (const RawSection* s = find_section("alpha")) {
        const RawEntry& form = s->require("form");
        if (form.value == "from-order") {
            sc.alpha_source = Scenario::AlphaSource::FromOrder;
        } else if (form.value == "from-cyclic") {
            sc.alpha_source = Scenario::AlphaSource::FromCyclic;
        } else {
            sc.alpha = parse_alpha_form(form, space, sc.alpha_source);
        }
    }

    if (const RawSection* s = find_section("psi")) sc.psi = parse_psi(*s);
    if (const RawSection* s = find_section("order")) sc.order = parse_order(*s, space);
    if (const RawSection* s = find_section("partition")) {
        sc.partition = parse_partition(*s, space);
    }

    if (const RawSection* s = find_section("corollary")) {
        Scenario::CorollarySpec spec;
        spec.kind = s->require("kind").value;
        static const std::vector<std::string> kinds = {"banach", "kannan",       "chatterjea",
                                                       "ciric",  "hardy-rogers", "berinde",
                                                       "ordered", "cyclic"};
        if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end()) {
            throw parse_error(s->require("kind").line,
                              "unknown corollary kind '" + spec.kind + "'");
        }
        if (spec.kind == "hardy-rogers") {
            spec.a = parse_number(s->require("a").value, s->require("a").line);
            spec.b = parse_number(s->require("b").value, s->require("b").line);
            spec.c = parse_number(s->require("c").value, s->require("c").line);
        } else if (spec.kind == "banach" || spec.kind == "kannan" ||
                   spec.kind == "chatterjea" || spec.kind == "ciric") {
            spec.lambda = parse_number(s->require("lambda").value, s->require("lambda").line);
        }
        sc.corollary = spec;
    }

    run_sec = find_section("run");
    if (!run_sec) throw parse_error(0, "missing [run] section");
    {
        const RawSection& s = *run_sec;
        std::string mode = s.require("mode").value;
        if (mode == "check") {
            sc.run.mode = RunSpec::Mode::Check;
        } else if (mode == "iterate") {
            sc.run.mode = RunSpec::Mode::Iterate;
        } else if (mode == "oracle") {
            sc.run.mode = RunSpec::Mode::Oracle;
        } else if (mode == "falsify") {
            sc.run.mode = RunSpec::Mode::Falsify;
        } else {
            throw parse_error(s.require("mode").line, "unknown mode '" + mode + "'");
        }
        if (const RawEntry* e = s.find("x0")) {
            if (!space) throw parse_error(e->line, "x0 requires a [space]");
            sc.run.x0 = parse_point(*space, e->value, e->line);
        }
        if (const RawEntry* e = s.find("tol")) sc.run.tol = parse_number(e->value, e->line);
        if (const RawEntry* e = s.find("max_iter")) {
            sc.run.max_iter = parse_count(e->value, e->line);
        }
        if (const RawEntry* e = s.find("seed")) sc.run.seed = parse_count(e->value, e->line);
        if (const RawEntry* e = s.find("trials")) sc.run.trials = parse_count(e->value, e->line);
        if (const RawEntry* e = s.find("space_size_max")) {
            sc.run.space_size_max = parse_count(e->value, e->line);
        }
        if (const RawEntry* e = s.find("grid_lo")) sc.run.grid_lo = parse_number(e->value, e->line);
        if (const RawEntry* e = s.find("grid_hi")) sc.run.grid_hi = parse_number(e->value, e->line);
        if (const RawEntry* e = s.find("grid_step")) {
            sc.run.grid_step = parse_number(e->value, e->line);
        }
        if (const RawEntry* e = s.find("random_pairs")) {
            sc.run.random_pairs = parse_count(e->value, e->line);
        }
        if (const RawEntry* e = s.find("slack")) sc.run.slack = parse_number(e->value, e->line);
        if (const RawEntry* e = s.find("checks")) sc.run.checks = split_ws(e->value);
    }

    validate_scenario(sc, run_sec->line);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(0, "cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

std::string Scenario::to_text() const {
    std::ostringstream os;
    if (space) {
        os << "[space]\n";
        if (space->is_finite()) {
            os << "kind = finite\npoints =";
            for (std::size_t i = 0; i < space->size(); ++i) os << ' ' << space->label(i);
            os << "\ndist =\n";
            for (std::size_t i = 0; i < space->size(); ++i) {
                for (std::size_t j = 0; j < space->size(); ++j) {
                    if (j) os << ' ';
                    os << fmt(space->dist_entry(i, j));
                }
                os << '\n';
            }
        } else {
            ClosedInterval b = space->bounds();
            os << "kind = interval\nlo = " << fmt(b.lo) << "\nhi = " << fmt(b.hi) << '\n';
        }
        os << '\n';
    }
    if (f || g || g_inverse) {
        os << "[pair]\n";
        if (f) os << "f = " << f->to_text() << '\n';
        if (g) os << "g = " << g->to_text() << '\n';
        if (g_inverse) os << "g_inverse = " << g_inverse->to_text() << '\n';
        if (g_range_closed_declared) os << "g_range_closed = true\n";
        os << '\n';
    }
    if (alpha_source != AlphaSource::None) {
        os << "[alpha]\n";
        if (alpha_source == AlphaSource::FromOrder) {
            os << "form = from-order\n";
        } else if (alpha_source == AlphaSource::FromCyclic) {
            os << "form = from-cyclic\n";
        } else if (alpha->is_matrix()) {
            os << "form = matrix\n";
            const std::size_t n = alpha->matrix_size();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (j) os << ' ';
                    os << fmt(alpha->matrix_entry(i, j));
                }
                os << '\n';
            }
        } else {
            os << "form = " << alpha->to_text() << '\n';
        }
        os << '\n';
    }
    if (psi) {
        os << "[psi]\n";
        if (psi->is_linear()) {
            os << "kind = linear\nlambda = " << fmt(psi->lambda()) << '\n';
        } else {
            os << "kind = table\nknots =\n";
            for (const auto& k : psi->table_knots()) {
                os << fmt(k.t) << ' ' << fmt(k.value) << '\n';
            }
        }
        os << '\n';
    }
    if (order) {
        os << "[order]\n";
        if (!order->is_matrix()) {
            os << "kind = standard-leq\n";
        } else {
            os << "kind = matrix\nrel =\n";
            const std::size_t n = order->size();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (j) os << ' ';
                    os << (order->leq(Point::index(i), Point::index(j)) ? 1 : 0);
                }
                os << '\n';
            }
        }
        os << '\n';
    }
    if (partition) {
        os << "[partition]\n";
        if (partition->is_finite()) {
            os << "a1 =";
            for (std::size_t i : partition->indices_a1()) os << ' ' << space->label(i);
            os << "\na2 =";
            for (std::size_t i : partition->indices_a2()) os << ' ' << space->label(i);
            os << '\n';
        } else {
            ClosedInterval a1 = partition->interval_a1(), a2 = partition->interval_a2();
            os << "a1 = " << fmt(a1.lo) << ' ' << fmt(a1.hi) << '\n';
            os << "a2 = " << fmt(a2.lo) << ' ' << fmt(a2.hi) << '\n';
        }
        os << '\n';
    }
    if (corollary) {
        os << "[corollary]\nkind = " << corollary->kind << '\n';
        if (corollary->kind == "hardy-rogers") {
            os << "a = " << fmt(corollary->a) << "\nb = " << fmt(corollary->b)
               << "\nc = " << fmt(corollary->c) << '\n';
        } else if (corollary->kind == "banach" || corollary->kind == "kannan" ||
                   corollary->kind == "chatterjea" || corollary->kind == "ciric") {
            os << "lambda = " << fmt(corollary->lambda) << '\n';
        }
        os << '\n';
    }
    os << "[run]\n";
    switch (run.mode) {
        case RunSpec::Mode::Check: os << "mode = check\n"; break;
        case RunSpec::Mode::Iterate: os << "mode = iterate\n"; break;
        case RunSpec::Mode::Oracle: os << "mode = oracle\n"; break;
        case RunSpec::Mode::Falsify: os << "mode = falsify\n"; break;
    }
    if (run.x0) {
        os << "x0 = "
           << (space->is_finite() ? space->label(run.x0->as_index()) : fmt(run.x0->as_coord()))
           << '\n';
    }
    os << "tol = " << fmt(run.tol) << '\n';
    os << "max_iter = " << run.max_iter << '\n';
    os << "seed = " << run.seed << '\n';
    os << "trials = " << run.trials << '\n';
    os << "space_size_max = " << run.space_size_max << '\n';
    os << "grid_lo = " << fmt(run.grid_lo) << '\n';
    os << "grid_hi = " << fmt(run.grid_hi) << '\n';
    os << "grid_step = " << fmt(run.grid_step) << '\n';
    os << "random_pairs = " << run.random_pairs << '\n';
    os << "slack = " << fmt(run.slack) << '\n';
    if (!run.checks.empty()) {
        os << "checks =";
        for (const std::string& c : run.checks) os << ' ' << c;
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Execution

namespace {

struct ExecContext {
    const Scenario& sc;
    std::optional<MappingPair> pair;
    std::optional<AlphaFunction> alpha;
    std::optional<CorollaryConfig> corollary;
    std::vector<std::pair<Point, Point>> pairs;
    std::vector<Point> points;
};

SamplePlan plan_of(const RunSpec& run) {
    SamplePlan plan;
    plan.grid_lo = run.grid_lo;
    plan.grid_hi = run.grid_hi;
    plan.grid_step = run.grid_step;
    plan.random_pairs = run.random_pairs;
    plan.seed = run.seed;
    return plan;
}

ExecContext make_context(const Scenario& sc) {
    ExecContext ctx{sc, {}, {}, {}, {}, {}};
    if (sc.space && sc.f && sc.g) {
        if (sc.space->is_finite()) {
            ctx.pair.emplace(*sc.space, *sc.f, *sc.g);
        } else if (sc.g_inverse) {
            ctx.pair.emplace(*sc.space, *sc.f, *sc.g, *sc.g_inverse);
        } else {
            // Checks that need preimages will report the absence themselves.
            ctx.pair.emplace(*sc.space, *sc.f, *sc.g, Map::identity());
        }
    }
    switch (sc.alpha_source) {
        case Scenario::AlphaSource::Explicit: ctx.alpha = *sc.alpha; break;
        case Scenario::AlphaSource::FromOrder: ctx.alpha = alpha_from_order(*sc.order); break;
        case Scenario::AlphaSource::FromCyclic:
            ctx.alpha = alpha_from_cyclic(*sc.partition, *sc.g, *sc.space);
            break;
        case Scenario::AlphaSource::None: break;
    }
    if (sc.corollary) {
        const auto& spec = *sc.corollary;
        if (spec.kind == "banach") {
            ctx.corollary = CorollaryConfig::banach(spec.lambda);
        } else if (spec.kind == "kannan") {
            ctx.corollary = CorollaryConfig::kannan(spec.lambda);
        } else if (spec.kind == "chatterjea") {
            ctx.corollary = CorollaryConfig::chatterjea(spec.lambda);
        } else if (spec.kind == "ciric") {
            ctx.corollary = CorollaryConfig::ciric(spec.lambda);
        } else if (spec.kind == "hardy-rogers") {
            ctx.corollary = CorollaryConfig::hardy_rogers(spec.a, spec.b, spec.c);
        } else if (spec.kind == "berinde") {
            ctx.corollary = CorollaryConfig::berinde(*sc.psi);
        } else if (spec.kind == "ordered") {
            ctx.corollary = CorollaryConfig::ordered(*sc.order, *sc.psi);
        } else if (spec.kind == "cyclic") {
            ctx.corollary = CorollaryConfig::cyclic(*sc.partition, *sc.psi);
        }
    }
    if (sc.space) {
        ctx.pairs = sample_pairs(*sc.space, plan_of(sc.run));
        ctx.points = sample_points(*sc.space, plan_of(sc.run));
    }
    return ctx;
}

std::vector<double> psi_samples(const RunSpec& run) {
    double hi = run.grid_hi > 0.0 ? run.grid_hi : 10.0;
    std::vector<double> samples;
    for (int i = 1; i <= 16; ++i) samples.push_back(hi * i / 16.0);
    return samples;
}

CheckResult run_one_check(const std::string& name, const ExecContext& ctx) {
    const Scenario& sc = ctx.sc;
    if (name == "space-valid") return sc.space->validate();
    if (name == "psi-membership") {
        auto samples = psi_samples(sc.run);
        return sc.psi->check_membership(samples);
    }
    if (name == "contractive") {
        return check_contractive(*ctx.pair, *ctx.alpha, *sc.psi, ctx.pairs, sc.run.slack);
    }
    if (name == "alpha-admissible") {
        return check_alpha_admissible(*sc.f, *ctx.alpha, ctx.pairs, *sc.space);
    }
    if (name == "alpha-admissible-wrt-g") {
        return check_alpha_admissible_wrt_g(*ctx.pair, *ctx.alpha, ctx.pairs);
    }
    if (name == "range-inclusion") {
        if (!sc.space->is_finite() && !sc.g_inverse) {
            return CheckResult::fail("no declared g-inverse to witness range inclusion");
        }
        return check_range_inclusion(*ctx.pair, ctx.points);
    }
    if (name == "initial-point") {
        bool ok = check_initial_point(*ctx.pair, *ctx.alpha, *sc.run.x0);
        if (ok) return CheckResult::pass();
        return CheckResult::fail("alpha(g x0, f x0) < 1",
                                 sc.space->describe_point(*sc.run.x0));
    }
    if (name == "self-mapping") {
        for (const Point& x : ctx.points) {
            Point fx = ctx.pair->f(x), gx = ctx.pair->g(x);
            if (!sc.space->contains(fx)) {
                return CheckResult::fail("f leaves the space", sc.space->describe_point(x));
            }
            if (!sc.space->contains(gx)) {
                return CheckResult::fail("g leaves the space", sc.space->describe_point(x));
            }
        }
        return CheckResult::pass();
    }
    if (name == "g-range-closed") {
        if (sc.space->is_finite()) return CheckResult::pass();
        auto closed = sc.g->range_closed_on(sc.space->bounds());
        if (closed.has_value()) {
            return *closed ? CheckResult::pass() : CheckResult::fail("g range not closed");
        }
        if (sc.g_range_closed_declared) {
            CheckResult r = CheckResult::pass();
            r.witness = "declared assumption";
            return r;
        }
        return CheckResult::fail("closedness not analytically decidable and not declared");
    }
    if (name == "order-valid") return sc.order->validate();
    if (name == "g-nondecreasing") {
        return check_g_nondecreasing(*ctx.pair, *sc.order, ctx.pairs);
    }
    if (name == "g-regular") {
        if (!sc.space->is_finite()) {
            CheckResult r = CheckResult::pass();
            r.witness = "declared assumption (interval space)";
            return r;
        }
        return check_g_regular(*ctx.pair, *sc.order);
    }
    if (name == "partition-valid") return sc.partition->validate(*sc.space);
    if (name == "g-images-closed" || name == "f(A1)-within-g(A2)" ||
        name == "f(A2)-within-g(A1)" || name == "g-injective") {
        NamedChecks checks = check_cyclic_conditions(*ctx.pair, *sc.partition);
        for (const auto& [key, result] : checks) {
            if (key == name) return result;
        }
        return CheckResult::fail("internal: cyclic condition not found");
    }
    // Corollary checks.
    CorollaryReduction red = reduce_corollary(*ctx.corollary, *ctx.pair);
    if (name == "direct-form") return red.check_direct(*ctx.pair, ctx.pairs, sc.run.slack);
    if (name == "generalized-form") {
        return check_contractive(*ctx.pair, red.alpha(), red.psi(), ctx.pairs, sc.run.slack);
    }
    if (name == "dominance") {
        const Space& s = *sc.space;
        for (const auto& [x, y] : ctx.pairs) {
            double rhs = red.direct_rhs(*ctx.pair, x, y);
            if (std::isinf(rhs)) continue;
            double m = red.psi().eval(contraction_majorant(*ctx.pair, x, y));
            if (rhs > m + sc.run.slack) {
                return CheckResult::fail("direct bound exceeds generalized bound",
                                         "(" + s.describe_point(x) + ", " +
                                             s.describe_point(y) + ")",
                                         rhs - m);
            }
        }
        return CheckResult::pass();
    }
    if (name == "direct-implies-generalized") {
        const Space& s = *sc.space;
        for (const auto& [x, y] : ctx.pairs) {
            double d = s.distance(ctx.pair->f(x), ctx.pair->f(y));
            double rhs = red.direct_rhs(*ctx.pair, x, y);
            if (!(d <= rhs + sc.run.slack)) continue;  // direct fails: vacuous
            double lhs = red.alpha().eval(ctx.pair->g(x), ctx.pair->g(y)) * d;
            double gen = red.psi().eval(contraction_majorant(*ctx.pair, x, y));
            if (!(lhs <= gen + sc.run.slack)) {
                return CheckResult::fail("direct holds but generalized fails",
                                         "(" + s.describe_point(x) + ", " +
                                             s.describe_point(y) + ")",
                                         lhs - gen);
            }
        }
        return CheckResult::pass();
    }
    return CheckResult::fail("unknown check '" + name + "'");
}

std::string point_list(const Space& s, const std::vector<Point>& pts) {
    std::string out;
    for (const Point& p : pts) {
        if (!out.empty()) out += ' ';
        out += s.describe_point(p);
    }
    return out.empty() ? "(none)" : out;
}

ScenarioResult exec_check(const Scenario& sc) {
    ExecContext ctx = make_context(sc);
    std::vector<std::string> list = sc.run.checks.empty() ? auto_checks(sc) : sc.run.checks;
    std::ostringstream os;
    os << "mode: check\n";
    os << "checks:\n";
    os << "name\tstatus\treason\twitness\tviolation\n";
    bool all_ok = true;
    for (const std::string& name : list) {
        CheckResult r = run_one_check(name, ctx);
        all_ok = all_ok && r.passed;
        os << name << '\t' << (r.passed ? "pass" : "fail") << '\t'
           << (r.reason.empty() ? "-" : r.reason) << '\t'
           << (r.witness.empty() ? "-" : r.witness) << '\t' << fmt(r.violation) << '\n';
    }
    os << "result: " << (all_ok ? "pass" : "fail") << '\n';
    return {all_ok ? 0 : 1, os.str()};
}

ScenarioResult exec_iterate(const Scenario& sc) {
    ExecContext ctx = make_context(sc);
    std::ostringstream os;
    os << "mode: iterate\n";
    IterationTrace trace;
    try {
        trace = jungck_iterate(*ctx.pair, *ctx.alpha, *sc.psi, *sc.run.x0, sc.run.tol,
                               sc.run.max_iter);
    } catch (const initial_point_rejected& e) {
        os << "outcome: initial-point-rejected\nerror: " << e.what() << '\n';
        return {1, os.str()};
    }
    const Space& s = *sc.space;
    switch (trace.outcome) {
        case IterationTrace::Outcome::CoincidenceFound: os << "outcome: coincidence-found\n"; break;
        case IterationTrace::Outcome::MaxIterations: os << "outcome: max-iterations\n"; break;
        case IterationTrace::Outcome::PreimageFailure: os << "outcome: preimage-failure\n"; break;
    }
    os << "iterations: " << trace.iterations << '\n';
    bool ok = trace.outcome == IterationTrace::Outcome::CoincidenceFound;
    if (ok) {
        Point z = *trace.found;
        Point fz = ctx.pair->f(z), gz = ctx.pair->g(z);
        double gap = s.distance(fz, gz);
        double fixed_gap = std::max(s.distance(z, fz), s.distance(z, gz));
        os << "coincidence-point: " << s.describe_point(z) << '\n';
        os << "point-of-coincidence: " << s.describe_point(gz) << '\n';
        os << "coincidence-gap: " << fmt(gap) << '\n';
        os << "fixed-point-gap: " << fmt(fixed_gap) << '\n';
        os << "common-fixed-point: " << (fixed_gap <= sc.run.tol ? "yes" : "no") << '\n';
    }
    CheckResult cauchy = verify_cauchy_certificate(trace, *sc.psi);
    os << "cauchy-certificate: " << (cauchy.passed ? "pass" : "fail") << '\n';
    os << "trace:\n" << trace.export_table();
    return {ok && cauchy.passed ? 0 : 1, os.str()};
}

const char* verdict_word(CoincidenceReport::Verdict v) {
    switch (v) {
        case CoincidenceReport::Verdict::TheoremConfirmed: return "theorem-confirmed";
        case CoincidenceReport::Verdict::HypothesesFailed: return "hypotheses-failed";
        case CoincidenceReport::Verdict::Contradiction: return "contradiction";
    }
    return "?";
}

ScenarioResult exec_oracle(const Scenario& sc) {
    ExecContext ctx = make_context(sc);
    CoincidenceReport report = run_theorem_suite(*ctx.pair, *ctx.alpha, *sc.psi);
    const Space& s = *sc.space;
    std::ostringstream os;
    os << "mode: oracle\n";
    os << "hypotheses:\n";
    os << "name\tstatus\treason\twitness\n";
    for (const auto& [name, r] : report.hypothesis_results) {
        os << name << '\t' << (r.passed ? "pass" : "fail") << '\t'
           << (r.reason.empty() ? "-" : r.reason) << '\t'
           << (r.witness.empty() ? "-" : r.witness) << '\n';
    }
    os << "coincidence-points: " << point_list(s, report.coincidence_points) << '\n';
    os << "points-of-coincidence: " << point_list(s, report.points_of_coincidence) << '\n';
    os << "common-fixed-points: " << point_list(s, report.common_fixed_points) << '\n';
    os << "verdict: " << verdict_word(report.verdict) << '\n';
    int code = 0;
    if (report.verdict == CoincidenceReport::Verdict::HypothesesFailed) code = 1;
    if (report.verdict == CoincidenceReport::Verdict::Contradiction) code = 3;
    return {code, os.str()};
}

ScenarioResult exec_falsify(const Scenario& sc) {
    std::ostringstream os;
    os << "mode: falsify\n";
    os << "seed: " << sc.run.seed << '\n';
    os << "trials: " << sc.run.trials << '\n';
    os << "space-size-max: " << sc.run.space_size_max << '\n';
    os << "results:\n";
    os << "trial\tsize\tverdict\tcoincidence\tcommon\tfailed\n";
    std::size_t contradictions = 0, hypothesis_passing = 0, uniqueness_passing = 0;
    std::size_t idx = 0;
    auto reports = falsification_search(
        sc.run.seed, sc.run.trials, sc.run.space_size_max,
        [&](const FalsificationTrial& trial, const CoincidenceReport& report) {
            os << idx++ << '\t' << trial.pair.space().size() << '\t'
               << verdict_word(report.verdict) << '\t' << report.coincidence_points.size()
               << '\t' << report.common_fixed_points.size() << '\t';
            if (report.failed_hypotheses.empty()) {
                os << '-';
            } else {
                for (std::size_t i = 0; i < report.failed_hypotheses.size(); ++i) {
                    if (i) os << ';';
                    os << report.failed_hypotheses[i];
                }
            }
            os << '\n';
            if (report.verdict == CoincidenceReport::Verdict::Contradiction) ++contradictions;
            if (report.coincidence_hypotheses_pass()) ++hypothesis_passing;
            if (report.uniqueness_hypotheses_pass()) ++uniqueness_passing;
        });
    (void)reports;
    os << "hypothesis-passing: " << hypothesis_passing << '\n';
    os << "uniqueness-passing: " << uniqueness_passing << '\n';
    os << "contradictions: " << contradictions << '\n';
    return {contradictions == 0 ? 0 : 3, os.str()};
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc) {
    switch (sc.run.mode) {
        case RunSpec::Mode::Check: return exec_check(sc);
        case RunSpec::Mode::Iterate: return exec_iterate(sc);
        case RunSpec::Mode::Oracle: return exec_oracle(sc);
        case RunSpec::Mode::Falsify: return exec_falsify(sc);
    }
    return {2, "error: unknown mode\n"};
}

ScenarioResult run_scenario_file(const std::string& path,
                                 std::optional<std::uint64_t> seed_override) {
    try {
        Scenario sc = load_scenario(path);
        if (seed_override) sc.run.seed = *seed_override;
        return run_scenario(sc);
    } catch (const parse_error& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    } catch (const coefficient_out_of_range& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    } catch (const std::invalid_argument& e) {
        return {2, std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace coincide
