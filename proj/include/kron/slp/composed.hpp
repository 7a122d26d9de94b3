#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "kron/errors.hpp"
#include "kron/ring/matrix.hpp"
#include "kron/slp/slp.hpp"

namespace kron {

/// A program F(X) read in the coordinates Y = lambda * X, i.e. F o lambda^-1.
///
/// The matrix lives over the field K, so instead of rewriting the integer
/// program the change X = lambda^-1 Y is prepended at evaluation time. Any
/// ring whose Scalar is K::Elem can evaluate it.
template <class K>
class ComposedSlp {
 public:
  using Elem = typename K::Elem;

  ComposedSlp(std::shared_ptr<const Slp> slp, K field, Matrix<K> lambda)
      : ComposedSlp(std::move(slp), field, lambda, mat_inverse(field, lambda)) {}

  ComposedSlp(std::shared_ptr<const Slp> slp, K field, Matrix<K> lambda, Matrix<K> lambda_inv)
      : slp_(std::move(slp)),
        field_(std::move(field)),
        lambda_(std::move(lambda)),
        inv_(std::move(lambda_inv)) {
    const std::size_t n = slp_->n_vars();
    if (lambda_.size() != n || inv_.size() != n)
      throw InvalidArgument("compose_linear: matrix size does not match the program");
    jac_.resize(slp_->n_outputs() + 1);
  }

  const Slp& slp() const { return *slp_; }
  std::shared_ptr<const Slp> slp_ptr() const { return slp_; }
  const K& field() const { return field_; }
  const Matrix<K>& lambda() const { return lambda_; }
  const Matrix<K>& lambda_inverse() const { return inv_; }
  std::size_t n_vars() const { return slp_->n_vars(); }
  std::size_t n_outputs() const { return slp_->n_outputs(); }

  /// Composes once more: the result reads F in coordinates Z = mu * Y.
  ComposedSlp compose(const Matrix<K>& mu) const {
    return ComposedSlp(slp_, field_, mat_mul(field_, mu, lambda_),
                       mat_mul(field_, inv_, mat_inverse(field_, mu)));
  }

  template <class R>
  std::vector<typename R::Elem> to_x(const R& ring, std::span<const typename R::Elem> y) const {
    const std::size_t n = n_vars();
    if (y.size() != n) throw InvalidArgument("composed evaluate: wrong number of inputs");
    std::vector<typename R::Elem> x(n, ring.zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (field_.is_zero(inv_[i][j])) continue;
        x[i] = ring.add(x[i], ring.mul(ring.from_scalar(inv_[i][j]), y[j]));
      }
    return x;
  }

  template <class R>
  std::vector<typename R::Elem> evaluate(const R& ring, std::span<const typename R::Elem> y) const {
    const auto x = to_x(ring, y);
    return kron::evaluate(*slp_, ring, std::span<const typename R::Elem>(x));
  }
  template <class R>
  std::vector<typename R::Elem> evaluate(const R& ring,
                                         const std::vector<typename R::Elem>& y) const {
    return evaluate(ring, std::span<const typename R::Elem>(y));
  }

  template <class R>
  struct Jacobian {
    std::vector<typename R::Elem> values;       // F_1..F_s
    std::vector<std::vector<typename R::Elem>> d;  // d[j][k] = dF_j / dY_k, all n columns
  };

  /// Values of the first s outputs and their partials in the Y coordinates.
  template <class R>
  Jacobian<R> jacobian(const R& ring, std::span<const typename R::Elem> y, std::size_t s) const {
    const std::size_t n = n_vars();
    const Slp& prog = jacobian_program_for(s);
    const auto x = to_x(ring, y);
    const auto out = kron::evaluate(prog, ring, std::span<const typename R::Elem>(x));
    Jacobian<R> J;
    J.values.assign(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(s));
    J.d.assign(s, std::vector<typename R::Elem>(n, ring.zero()));
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto acc = ring.zero();
        for (std::size_t i = 0; i < n; ++i) {
          if (field_.is_zero(inv_[i][k])) continue;
          acc = ring.add(acc, ring.mul(out[s + j * n + i], ring.from_scalar(inv_[i][k])));
        }
        J.d[j][k] = std::move(acc);
      }
    return J;
  }

  /// Builds the derivative programs ahead of time so later evaluation from
  /// several threads only reads shared state.
  void prepare_jacobians() const {
    for (std::size_t s = 1; s <= n_outputs(); ++s) jacobian_program_for(s);
  }

 private:
  const Slp& jacobian_program_for(std::size_t s) const {
    if (s > n_outputs()) throw InvalidArgument("jacobian: not enough outputs");
    if (!jac_[s]) {
      std::vector<std::size_t> idx(s);
      for (std::size_t i = 0; i < s; ++i) idx[i] = i;
      jac_[s] = std::make_shared<const Slp>(jacobian_program(*slp_, idx));
    }
    return *jac_[s];
  }

  std::shared_ptr<const Slp> slp_;
  K field_;
  Matrix<K> lambda_;
  Matrix<K> inv_;
  mutable std::vector<std::shared_ptr<const Slp>> jac_;
};

/// F o lambda^-1; SingularMatrix when lambda is not invertible.
template <class K>
ComposedSlp<K> compose_linear(const Slp& slp, const K& field, const Matrix<K>& lambda) {
  return ComposedSlp<K>(std::make_shared<const Slp>(slp), field, lambda);
}

}  // namespace kron
