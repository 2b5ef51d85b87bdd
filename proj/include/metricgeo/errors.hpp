#pragma once

#include <stdexcept>
#include <string>

namespace metricgeo {

/// Operands of incompatible dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix failed validation: non-finite, not symmetric, or not positive
/// definite where a metric value is required.
class InvalidMatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two fields were combined that do not live on the same sampled base.
class BaseMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which domain predicate a computation violated.
enum class Predicate {
  kExpDomain,       // h lies on the excluded ray (-inf, -4/n] g0
  kLogDomain,       // tr(A0^2) >= (4 pi)^2 / n
  kExistence,       // t outside the geodesic's existence interval
  kPositivity,      // a metric value lost positive definiteness
  kDegeneracy,      // a closed form has a vanishing denominator
};

const char* predicate_name(Predicate p);

/// A point violated a domain predicate. Field-level wrappers attach the id of
/// the first failing point.
class DomainError : public std::domain_error {
 public:
  DomainError(Predicate predicate, const std::string& what,
              std::string point_id = {})
      : std::domain_error(point_id.empty() ? what
                                           : "point '" + point_id + "': " + what),
        predicate_(predicate),
        point_id_(std::move(point_id)),
        detail_(what) {}

  Predicate predicate() const { return predicate_; }
  const std::string& point_id() const { return point_id_; }
  const std::string& detail() const { return detail_; }

  DomainError at_point(const std::string& id) const {
    return DomainError(predicate_, detail_, id);
  }

 private:
  Predicate predicate_;
  std::string point_id_;
  std::string detail_;
};

}  // namespace metricgeo
