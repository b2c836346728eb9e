#include "coincide/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace coincide {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Map Map::table(std::vector<std::size_t> image) {
    Map m;
    m.kind_ = Kind::Table;
    m.table_ = std::move(image);
    return m;
}

Map Map::identity() {
    Map m;
    m.kind_ = Kind::Identity;
    return m;
}

Map Map::affine(double a, double b) {
    Map m;
    m.kind_ = Kind::Affine;
    m.a_ = a;
    m.b_ = b;
    return m;
}

Map Map::scale(double c) {
    Map m;
    m.kind_ = Kind::Scale;
    m.a_ = c;
    return m;
}

Map Map::reciprocal() {
    Map m;
    m.kind_ = Kind::Reciprocal;
    return m;
}

Map Map::exp_decay() {
    Map m;
    m.kind_ = Kind::ExpDecay;
    return m;
}

Map Map::exp_growth() {
    Map m;
    m.kind_ = Kind::ExpGrowth;
    return m;
}

Map Map::log_form(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("log form requires c > 0");
    Map m;
    m.kind_ = Kind::LogForm;
    m.a_ = c;
    return m;
}

Map Map::sqrt_map() {
    Map m;
    m.kind_ = Kind::Sqrt;
    return m;
}

Map Map::square() {
    Map m;
    m.kind_ = Kind::Square;
    return m;
}

Map Map::piecewise(std::vector<Piece> pieces) {
    if (pieces.empty()) throw std::invalid_argument("piecewise map needs at least one piece");
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (!(pieces[i].upper < pieces[i + 1].upper)) {
            throw std::invalid_argument("piecewise breakpoints must be strictly increasing");
        }
        if (pieces[i].map.kind() == Kind::Piecewise || pieces[i].map.is_table()) {
            throw std::invalid_argument("piecewise branches must be catalog primitives");
        }
    }
    if (pieces.back().upper != kInf) {
        throw std::invalid_argument("final piece must cover the rest (upper = inf)");
    }
    Map m;
    m.kind_ = Kind::Piecewise;
    m.pieces_ = std::move(pieces);
    return m;
}

std::size_t Map::eval_index(std::size_t i) const {
    if (kind_ == Kind::Identity) return i;
    if (kind_ != Kind::Table) throw std::logic_error("map is not a table");
    return table_.at(i);
}

double Map::eval_real(double x) const {
    switch (kind_) {
        case Kind::Table:
            throw std::logic_error("table map cannot evaluate a coordinate");
        case Kind::Identity: return x;
        case Kind::Affine: return a_ * x + b_;
        case Kind::Scale: return a_ * x;
        case Kind::Reciprocal: return 1.0 / x;
        case Kind::ExpDecay: return std::exp(-x);
        case Kind::ExpGrowth: return std::exp(x);
        case Kind::LogForm: return std::log1p(x / a_);
        case Kind::Sqrt: return std::sqrt(x);
        case Kind::Square: return x * x;
        case Kind::Piecewise:
            for (const Piece& p : pieces_) {
                if (x <= p.upper) return p.map.eval_real(x);
            }
            return pieces_.back().map.eval_real(x);
    }
    throw std::logic_error("unreachable map kind");
}

Point Map::apply(const Point& p) const {
    if (p.is_index()) return Point::index(eval_index(p.as_index()));
    return Point::coord(eval_real(p.as_coord()));
}

std::optional<Map> Map::inverse() const {
    switch (kind_) {
        case Kind::Identity: return identity();
        case Kind::Affine:
            if (a_ == 0.0) return std::nullopt;
            return affine(1.0 / a_, -b_ / a_);
        case Kind::Scale:
            if (a_ == 0.0) return std::nullopt;
            return scale(1.0 / a_);
        case Kind::Reciprocal: return reciprocal();
        case Kind::Sqrt: return square();
        case Kind::Square: return sqrt_map();
        default: return std::nullopt;
    }
}

namespace {

// Image hull of a monotone primitive: evaluate both endpoints, order them,
// taking limits at infinite endpoints.
ClosedInterval endpoint_hull(const Map& m, const ClosedInterval& dom) {
    auto limit_eval = [&](double x, bool toward_plus_inf) {
        if (std::isfinite(x)) return m.eval_real(x);
        switch (m.kind()) {
            case Map::Kind::Identity: return toward_plus_inf ? kInf : -kInf;
            case Map::Kind::Affine:
            case Map::Kind::Scale: {
                double a = m.param_a();
                if (a == 0.0) return m.eval_real(0.0);
                return (a > 0.0) == toward_plus_inf ? kInf : -kInf;
            }
            case Map::Kind::Reciprocal: return toward_plus_inf ? 0.0 : -0.0;
            case Map::Kind::ExpDecay: return toward_plus_inf ? 0.0 : kInf;
            case Map::Kind::ExpGrowth: return toward_plus_inf ? kInf : 0.0;
            case Map::Kind::LogForm: return toward_plus_inf ? kInf : -kInf;
            case Map::Kind::Sqrt: return toward_plus_inf ? kInf : 0.0;
            case Map::Kind::Square: return kInf;
            default: return kInf;
        }
    };
    double va = limit_eval(dom.lo, false);
    double vb = limit_eval(dom.hi, true);
    return {std::min(va, vb), std::max(va, vb)};
}

}  // namespace

std::vector<ClosedInterval> Map::image_hull(const ClosedInterval& dom) const {
    switch (kind_) {
        case Kind::Table:
            throw std::logic_error("table map has no interval image");
        case Kind::Square: {
            // Not monotone across 0.
            if (dom.lo < 0.0 && dom.hi > 0.0) {
                double m = std::max(dom.lo * dom.lo, dom.hi * dom.hi);
                return {{0.0, std::isfinite(dom.lo) && std::isfinite(dom.hi) ? m : kInf}};
            }
            return {endpoint_hull(*this, dom)};
        }
        case Kind::Piecewise: {
            std::vector<ClosedInterval> out;
            double lo = dom.lo;
            for (const Piece& p : pieces_) {
                double hi = std::min(dom.hi, p.upper);
                if (lo <= hi) {
                    auto piece_img = p.map.image_hull({lo, hi});
                    out.insert(out.end(), piece_img.begin(), piece_img.end());
                }
                lo = std::max(lo, p.upper);
                if (lo > dom.hi) break;
            }
            return out;
        }
        default:
            return {endpoint_hull(*this, dom)};
    }
}

std::optional<bool> Map::injective_on(const ClosedInterval& dom) const {
    switch (kind_) {
        case Kind::Table: return std::nullopt;  // decided exhaustively elsewhere
        case Kind::Identity:
        case Kind::Reciprocal:
        case Kind::ExpDecay:
        case Kind::ExpGrowth:
        case Kind::LogForm:
        case Kind::Sqrt:
            return true;
        case Kind::Affine:
        case Kind::Scale:
            return a_ != 0.0;
        case Kind::Square:
            if (dom.lo >= 0.0 || dom.hi <= 0.0) return true;
            return false;
        case Kind::Piecewise: {
            // Injective when every branch is injective and branch image
            // hulls overlap at most in endpoints.
            std::vector<ClosedInterval> hulls;
            double lo = dom.lo;
            for (const Piece& p : pieces_) {
                double hi = std::min(dom.hi, p.upper);
                if (lo <= hi) {
                    auto inj = p.map.injective_on({lo, hi});
                    if (!inj.has_value()) return std::nullopt;
                    if (!*inj) return false;
                    auto img = p.map.image_hull({lo, hi});
                    hulls.insert(hulls.end(), img.begin(), img.end());
                }
                lo = std::max(lo, p.upper);
                if (lo > dom.hi) break;
            }
            for (std::size_t i = 0; i < hulls.size(); ++i) {
                for (std::size_t j = i + 1; j < hulls.size(); ++j) {
                    double overlap = std::min(hulls[i].hi, hulls[j].hi) -
                                     std::max(hulls[i].lo, hulls[j].lo);
                    if (overlap > 0.0) return std::nullopt;
                }
            }
            return true;
        }
    }
    return std::nullopt;
}

std::optional<bool> Map::range_closed_on(const ClosedInterval& dom) const {
    switch (kind_) {
        case Kind::Table: return true;  // finite images are closed
        case Kind::Identity:
        case Kind::Affine:
        case Kind::Scale:
        case Kind::Sqrt:
        case Kind::Square:
        case Kind::LogForm:
        case Kind::ExpGrowth:
            return true;  // continuous with attained endpoint limits
        case Kind::Reciprocal:
        case Kind::ExpDecay:
            // Open at 0 when the domain is unbounded.
            if (dom.bounded()) return true;
            return false;
        case Kind::Piecewise:
            // Branch edges may be half-open; not decided analytically.
            return std::nullopt;
    }
    return std::nullopt;
}

std::string Map::to_text() const {
    switch (kind_) {
        case Kind::Table: {
            std::string s = "table";
            for (std::size_t v : table_) s += " " + std::to_string(v);
            return s;
        }
        case Kind::Identity: return "identity";
        case Kind::Affine: return "affine " + fmt(a_) + " " + fmt(b_);
        case Kind::Scale: return "scale " + fmt(a_);
        case Kind::Reciprocal: return "reciprocal";
        case Kind::ExpDecay: return "exp-decay";
        case Kind::ExpGrowth: return "exp-growth";
        case Kind::LogForm: return "log-form " + fmt(a_);
        case Kind::Sqrt: return "sqrt";
        case Kind::Square: return "square";
        case Kind::Piecewise: {
            std::string s = "piecewise ";
            for (std::size_t i = 0; i < pieces_.size(); ++i) {
                if (i) s += " | ";
                if (pieces_[i].upper == kInf) {
                    s += "rest : ";
                } else {
                    s += "upto " + fmt(pieces_[i].upper) + " : ";
                }
                s += pieces_[i].map.to_text();
            }
            return s;
        }
    }
    return "";
}

}  // namespace coincide
