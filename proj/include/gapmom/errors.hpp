#ifndef GAPMOM_ERRORS_HPP
#define GAPMOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gapmom {

// Argument or parameter outside the mathematical domain of an operation.
// The message names the violated bound.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Evaluation exactly at a non-integrable singularity (weight poles, Gamma poles).
class pole_error : public domain_error {
 public:
  explicit pole_error(const std::string& what) : domain_error(what) {}
};

// An iterative scheme exhausted its budget. Carries the best partial result
// and the number of terms or nodes consumed when it gave up.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double partial, long count)
      : std::runtime_error(what), partial_(partial), count_(count) {}

  double partial() const noexcept { return partial_; }
  long count() const noexcept { return count_; }

 private:
  double partial_;
  long count_;
};

}  // namespace gapmom

#endif
