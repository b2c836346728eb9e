#include "coincide/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "coincide/errors.hpp"
#include "coincide/rng.hpp"

namespace coincide {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::size_t Point::as_index() const {
    if (!is_index()) throw std::logic_error("point is a coordinate, not an index");
    return std::get<std::size_t>(rep_);
}

double Point::as_coord() const {
    if (is_index()) throw std::logic_error("point is an index, not a coordinate");
    return std::get<double>(rep_);
}

bool ClosedInterval::bounded() const {
    return std::isfinite(lo) && std::isfinite(hi);
}

bool covered_by(const std::vector<ClosedInterval>& pieces, std::vector<ClosedInterval> cover) {
    std::sort(cover.begin(), cover.end(),
              [](const ClosedInterval& a, const ClosedInterval& b) { return a.lo < b.lo; });
    // Merge overlapping / touching cover intervals.
    std::vector<ClosedInterval> merged;
    for (const ClosedInterval& c : cover) {
        if (c.lo > c.hi) continue;
        if (!merged.empty() && c.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, c.hi);
        } else {
            merged.push_back(c);
        }
    }
    for (const ClosedInterval& p : pieces) {
        bool inside = false;
        for (const ClosedInterval& m : merged) {
            if (p.lo >= m.lo && p.hi <= m.hi) {
                inside = true;
                break;
            }
        }
        if (!inside) return false;
    }
    return true;
}

Space Space::finite(std::vector<std::string> labels, std::vector<double> dist_row_major) {
    if (labels.empty()) throw std::invalid_argument("finite space requires at least one point");
    if (dist_row_major.size() != labels.size() * labels.size()) {
        throw std::invalid_argument("distance matrix size does not match point count");
    }
    Space s;
    s.finite_ = true;
    s.labels_ = std::move(labels);
    s.dist_ = std::move(dist_row_major);
    return s;
}

Space Space::interval(double lo, double hi) {
    Space s;
    s.finite_ = false;
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
}

std::size_t Space::size() const {
    if (!finite_) throw not_finite("size() requires a finite space");
    return labels_.size();
}

const std::string& Space::label(std::size_t i) const {
    if (!finite_) throw not_finite("label() requires a finite space");
    return labels_.at(i);
}

double Space::dist_entry(std::size_t i, std::size_t j) const {
    return dist_.at(i * labels_.size() + j);
}

ClosedInterval Space::bounds() const {
    if (finite_) throw std::logic_error("bounds() requires an interval space");
    return {lo_, hi_};
}

bool Space::contains(const Point& p) const {
    if (finite_) {
        return p.is_index() && p.as_index() < labels_.size();
    }
    if (p.is_index()) return false;
    double x = p.as_coord();
    return std::isfinite(x) && x >= lo_ && x <= hi_;
}

double Space::distance(const Point& x, const Point& y) const {
    if (!contains(x)) throw point_outside_space("distance: first point outside space");
    if (!contains(y)) throw point_outside_space("distance: second point outside space");
    if (finite_) return dist_entry(x.as_index(), y.as_index());
    return std::abs(x.as_coord() - y.as_coord());
}

CheckResult Space::validate() const {
    if (!finite_) {
        if (!(lo_ < hi_)) {
            return CheckResult::fail("interval bounds not ordered",
                                     "lo = " + fmt(lo_) + ", hi = " + fmt(hi_));
        }
        if (std::isnan(lo_) || std::isnan(hi_)) {
            return CheckResult::fail("interval bound is NaN");
        }
        return CheckResult::pass();
    }
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_entry(i, i) != 0.0) {
            return CheckResult::fail("nonzero diagonal", labels_[i]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            double d = dist_entry(i, j);
            if (d < 0.0 || std::isnan(d)) {
                return CheckResult::fail("negative or NaN distance",
                                         labels_[i] + "," + labels_[j]);
            }
            if (d != dist_entry(j, i)) {
                return CheckResult::fail("asymmetric distance",
                                         labels_[i] + "," + labels_[j]);
            }
            if (i != j && d == 0.0) {
                return CheckResult::fail("zero distance between distinct points",
                                         labels_[i] + "," + labels_[j]);
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (dist_entry(i, k) > dist_entry(i, j) + dist_entry(j, k)) {
                    return CheckResult::fail(
                        "triangle inequality violated",
                        "(" + labels_[i] + "," + labels_[j] + "," + labels_[k] + ")",
                        dist_entry(i, k) - (dist_entry(i, j) + dist_entry(j, k)));
                }
            }
        }
    }
    return CheckResult::pass();
}

std::string Space::describe_point(const Point& p) const {
    if (finite_ && p.is_index() && p.as_index() < labels_.size()) {
        return labels_[p.as_index()];
    }
    if (!p.is_index()) return fmt(p.as_coord());
    return "#" + std::to_string(p.as_index());
}

Space random_finite_space(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) throw std::invalid_argument("random space needs n >= 1");
    std::vector<double> xs(n), ys(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = uniform_unit(rng);
            ys[i] = uniform_unit(rng);
        }
        bool distinct = true;
        for (std::size_t i = 0; i < n && distinct; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (xs[i] == xs[j] && ys[i] == ys[j]) {
                    distinct = false;
                    break;
                }
            }
        }
        if (distinct) break;
    }
    std::vector<std::string> labels(n);
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dist[i * n + j] = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
        }
    }
    return Space::finite(std::move(labels), std::move(dist));
}

PartialOrder PartialOrder::matrix(std::size_t n, std::vector<std::uint8_t> rel_row_major) {
    if (rel_row_major.size() != n * n) {
        throw std::invalid_argument("order matrix size does not match point count");
    }
    PartialOrder o;
    o.matrix_ = true;
    o.n_ = n;
    o.rel_ = std::move(rel_row_major);
    return o;
}

PartialOrder PartialOrder::standard_leq() { return PartialOrder(); }

bool PartialOrder::leq(const Point& x, const Point& y) const {
    if (matrix_) return rel_.at(x.as_index() * n_ + y.as_index()) != 0;
    return x.as_coord() <= y.as_coord();
}

CheckResult PartialOrder::validate() const {
    if (!matrix_) return CheckResult::pass();
    for (std::size_t i = 0; i < n_; ++i) {
        if (!rel_[i * n_ + i]) {
            return CheckResult::fail("not reflexive", std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (i != j && rel_[i * n_ + j] && rel_[j * n_ + i]) {
                return CheckResult::fail("not antisymmetric",
                                         std::to_string(i) + "," + std::to_string(j));
            }
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) {
                if (rel_[i * n_ + j] && rel_[j * n_ + k] && !rel_[i * n_ + k]) {
                    return CheckResult::fail("not transitive",
                                             std::to_string(i) + "," + std::to_string(j) + "," +
                                                 std::to_string(k));
                }
            }
        }
    }
    return CheckResult::pass();
}

CyclicPartition CyclicPartition::finite_sets(std::vector<std::size_t> a1,
                                             std::vector<std::size_t> a2) {
    CyclicPartition p;
    p.finite_ = true;
    p.idx_a1_ = std::move(a1);
    p.idx_a2_ = std::move(a2);
    return p;
}

CyclicPartition CyclicPartition::intervals(ClosedInterval a1, ClosedInterval a2) {
    CyclicPartition p;
    p.finite_ = false;
    p.int_a1_ = a1;
    p.int_a2_ = a2;
    return p;
}

bool CyclicPartition::in_a1(const Point& p) const {
    if (finite_) {
        return std::find(idx_a1_.begin(), idx_a1_.end(), p.as_index()) != idx_a1_.end();
    }
    return int_a1_.contains(p.as_coord());
}

bool CyclicPartition::in_a2(const Point& p) const {
    if (finite_) {
        return std::find(idx_a2_.begin(), idx_a2_.end(), p.as_index()) != idx_a2_.end();
    }
    return int_a2_.contains(p.as_coord());
}

CheckResult CyclicPartition::validate(const Space& s) const {
    if (finite_ != s.is_finite()) {
        return CheckResult::fail("partition kind does not match space kind");
    }
    if (finite_) {
        if (idx_a1_.empty() || idx_a2_.empty()) {
            return CheckResult::fail("partition subsets must be nonempty");
        }
        for (std::size_t i : idx_a1_) {
            if (i >= s.size()) return CheckResult::fail("A1 index outside space", std::to_string(i));
        }
        for (std::size_t i : idx_a2_) {
            if (i >= s.size()) return CheckResult::fail("A2 index outside space", std::to_string(i));
        }
        return CheckResult::pass();
    }
    for (const ClosedInterval& c : {int_a1_, int_a2_}) {
        if (!(c.lo <= c.hi)) return CheckResult::fail("partition interval empty");
        if (!c.bounded()) return CheckResult::fail("partition interval must be bounded");
    }
    ClosedInterval b = s.bounds();
    if (int_a1_.lo < b.lo || int_a1_.hi > b.hi || int_a2_.lo < b.lo || int_a2_.hi > b.hi) {
        return CheckResult::fail("partition interval outside space");
    }
    return CheckResult::pass();
}

}  // namespace coincide
