#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coincide/space.hpp"

namespace coincide {

struct MapPiece;

/// An evaluable self-map declared from a fixed catalog.
///
/// Finite spaces use lookup tables over point indices. Interval spaces use
/// closed-form primitives (affine, scale, reciprocal, exponential decay and
/// growth, log form, square root, square) and piecewise combinations of
/// them, so scenario files stay declarative and images of intervals can be
/// computed analytically.
class Map {
public:
    enum class Kind {
        Table,
        Identity,
        Affine,     // a*x + b
        Scale,      // c*x
        Reciprocal, // 1/x
        ExpDecay,   // e^-x
        ExpGrowth,  // e^x
        LogForm,    // ln(1 + x/c)
        Sqrt,
        Square,
        Piecewise,
    };

    using Piece = MapPiece;

    static Map table(std::vector<std::size_t> image);
    static Map identity();
    static Map affine(double a, double b);
    static Map scale(double c);
    static Map reciprocal();
    static Map exp_decay();
    static Map exp_growth();
    static Map log_form(double c);
    static Map sqrt_map();
    static Map square();
    static Map piecewise(std::vector<Piece> pieces);

    Kind kind() const { return kind_; }
    bool is_table() const { return kind_ == Kind::Table; }
    const std::vector<std::size_t>& table_values() const { return table_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    const std::vector<Piece>& pieces() const { return pieces_; }

    std::size_t eval_index(std::size_t i) const;
    double eval_real(double x) const;
    Point apply(const Point& p) const;
    Point operator()(const Point& p) const { return apply(p); }

    /// Analytic inverse where one exists in the catalog (monotone
    /// single-piece primitives). Piecewise and table maps return nullopt.
    std::optional<Map> inverse() const;

    /// Closed hulls of the image of `dom`, one per piece. For piecewise
    /// maps with open branch edges this is the closure of the true image.
    std::vector<ClosedInterval> image_hull(const ClosedInterval& dom) const;

    /// Analytic injectivity on `dom`: true/false when decidable from the
    /// catalog structure, nullopt when not.
    std::optional<bool> injective_on(const ClosedInterval& dom) const;

    /// Analytic closedness of the image of `dom`; nullopt when unknown.
    std::optional<bool> range_closed_on(const ClosedInterval& dom) const;

    /// Scenario-file rendering, e.g. "affine 0.5 0" or
    /// "piecewise upto 2 : affine 0.33 0 | rest : affine 2 -1.5".
    std::string to_text() const;

private:
    Map() = default;

    Kind kind_ = Kind::Identity;
    std::vector<std::size_t> table_;
    double a_ = 0.0;
    double b_ = 0.0;
    std::vector<MapPiece> pieces_;
};

/// One branch of a piecewise map: applies while x <= upper; the final
/// branch carries upper = +inf and covers the rest.
struct MapPiece {
    double upper;
    Map map;
};

}  // namespace coincide
