#pragma once

#include <stdexcept>
#include <string>

namespace coincide {

/// A point was handed to a space that does not contain it.
class point_outside_space : public std::invalid_argument {
public:
    explicit point_outside_space(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Iterate series of a table-backed comparison function failed the
/// geometric-decay guard within the configured term budget.
class non_summable : public std::runtime_error {
public:
    explicit non_summable(const std::string& what)
        : std::runtime_error(what) {}
};

/// An exhaustive check was requested on a non-finite space.
class not_finite : public std::invalid_argument {
public:
    explicit not_finite(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Corollary coefficients violate their admissible range.
class coefficient_out_of_range : public std::invalid_argument {
public:
    explicit coefficient_out_of_range(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Iteration was started from a point failing the alpha seed condition.
class initial_point_rejected : public std::invalid_argument {
public:
    explicit initial_point_rejected(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Scenario file could not be parsed; carries a 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace coincide
