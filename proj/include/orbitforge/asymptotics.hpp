#pragma once

#include "bigint.hpp"

#include <Eigen/Core>

#include <utility>

namespace orbitforge
{

/*! \brief Binary entropy; H(0) = H(1) = 0. Throws std::domain_error outside [0, 1]. */
long double entropy( long double x );

/*! \brief log2 of 2^{mH(k/m)}/(m+1) and 2^{mH(k/m)}. */
struct binomial_bound
{
  long double log2_lower{ 0 };
  long double log2_upper{ 0 };
};

binomial_bound binomial_bounds( unsigned long m, unsigned long k );

/*! \brief Exact check of lower <= C(m,k) <= upper.
 *
 * 2^{mH(k/m)} = m^m / (k^k (m-k)^(m-k)), so both sides compare as integers.
 */
bool binomial_sandwich_holds( unsigned long m, unsigned long k );

/*! \brief Exact check of C(m,k) <= (m/2+1)^2 C(m/2,k/2)^2 for even m and k. */
bool half_binomial_inequality_holds( unsigned long m, unsigned long k );

/*! \brief Product families f(u, v) whose coefficients the saddle estimate targets.
 *
 * With u = x^2 and z = 1 every family is
 * f = (u + 1 + 2v^2)^A (u + (1+v)^2)^B (1 + 2v)^(2C);
 * `r3` has A = 0 and `r4` has B = 0.
 */
enum class saddle_family
{
  r1,
  r3,
  r4
};

template<typename Scalar = long double>
struct saddle_params
{
  Scalar a{ 0 }, b{ 0 }, c{ 0 };
  Scalar p{ 0 }, q{ 0 }, r{ 0 };

  Scalar n() const { return p + q + r; }
};

template<typename Scalar = long double>
struct saddle_point
{
  saddle_family family{ saddle_family::r1 };
  saddle_params<Scalar> params;
  Scalar u0{ 0 }, v0{ 0 };
  /*! \brief ln f(u0, v0). */
  Scalar log_f{ 0 };
  Eigen::Matrix<Scalar, 2, 2> hessian;
  Scalar hessian_det{ 0 };
  /*! \brief |u h_u| + |v h_v| at the point, divided by n. */
  Scalar residual{ 0 };
};

/*! \brief h(u, v) = ln f(u, v) - (p/2) ln u - q ln v. */
template<typename Scalar>
Scalar h_value( saddle_params<Scalar> const& s, Scalar u, Scalar v );

template<typename Scalar>
Eigen::Matrix<Scalar, 2, 1> h_gradient( saddle_params<Scalar> const& s, Scalar u, Scalar v );

/*! \brief Analytic Hessian of h. */
template<typename Scalar>
Eigen::Matrix<Scalar, 2, 2> hessian_h( saddle_params<Scalar> const& s, Scalar u, Scalar v );

/*! \brief Unique non-negative root of 4r x^3 + (4A - 2p - 2q) x^2 + (4C - 2q) x - q. */
template<typename Scalar>
Scalar r4_cubic_root( saddle_params<Scalar> const& s );

/*! \brief Critical point of h.
 *
 * r1 starts at (16, 2), exact for the region-1 recipe, and polishes with
 * Newton steps otherwise. r3 and r4 use their closed forms.
 * Throws std::domain_error when the family preconditions fail
 * (r3: r > 0, 2B > p; r4: 2A > p) or the Hessian is not positive definite.
 */
template<typename Scalar>
saddle_point<Scalar> critical_point( saddle_family family, saddle_params<Scalar> const& s );

/*! \brief log2 of f / (2 pi u0^(p/2+1) v0^(q+1) sqrt(det H)), the estimate of [u^(p/2) v^q] f. */
template<typename Scalar>
Scalar saddle_log2_estimate( saddle_point<Scalar> const& sp );

struct saddle_check
{
  saddle_point<long double> point;
  long double log2_estimate{ 0 };
  long double log2_exact{ 0 };
  /*! \brief |estimate / exact - 1|. */
  long double relative_error{ 0 };
};

/*! \brief Estimate at integer parameters together with the exact coefficient (Nand count 2C). */
saddle_check saddle_estimate( saddle_family family, long a, long b, long c, long p, long q, long r );

/*! \brief Hatted parameters for the bounded objectives. */
template<typename Scalar = long double>
struct objective_params
{
  Scalar p_hat{ 0 }, r_hat{ 0 };
  /*! \brief (B, C) for region 3 or (A, C) for region 4, as fractions of n. */
  Scalar block{ 0 }, c_hat{ 0 };

  Scalar q_hat() const { return Scalar( 1 ) - p_hat - r_hat; }
};

/*! \brief Exponent T of one region-3 candidate (B, C); log base 2. */
template<typename Scalar>
Scalar objective_t3( objective_params<Scalar> const& o );

/*! \brief Exponent T of one region-4 candidate (A, C); log base 2. */
template<typename Scalar>
Scalar objective_t4( objective_params<Scalar> const& o );

/*! \brief (T1, T2) for region 3 or 4 at (p_hat, r_hat) with the default candidates. */
std::pair<long double, long double> objective_T( int region, long double p_hat, long double r_hat );

/*! \brief Feasibility of (p_hat, r_hat) for region 3 or 4, in hatted form. */
bool objective_feasible( int region, long double p_hat, long double r_hat );

struct optimize_result
{
  int region{ 0 };
  long double grid_step{ 0 };
  long double observed_max{ 0 };
  long double p_hat{ 0 }, r_hat{ 0 };
  long double bound{ 0 };
  std::size_t evaluations{ 0 };
};

/*! \brief Observed max of min(T1, T2): grid scan followed by coordinate refinement. Not a certified bound. */
optimize_result maximize_min_T( int region, long double grid_step, int refine_iters = 60 );

/*! \brief g(y) = H(y) + H(1/20)/20 + a - y/2 - a H(y / 2a) with a = 0.355. */
long double region5_g( long double y );
long double region5_g_prime( long double y );

struct region5_report
{
  long double g_at_end{ 0 };
  long double min_derivative{ 0 };
  std::size_t grid_points{ 0 };
  /*! \brief (4a + 2)^2 - 12, exact. */
  big_rational discriminant;
  bool passed{ false };
};

region5_report region5_check( std::size_t grid_points = 10000 );

struct region6_report
{
  long double exponent{ 0 };
  long double entropy_quarter{ 0 };
  bool passed{ false };
};

/*! \brief log2 C(n, p) / n against H(1/4); requires 4p <= n. */
region6_report region6_bound( unsigned long n, unsigned long p );

extern template double h_value( saddle_params<double> const&, double, double );
extern template long double h_value( saddle_params<long double> const&, long double, long double );
extern template Eigen::Matrix<double, 2, 1> h_gradient( saddle_params<double> const&, double, double );
extern template Eigen::Matrix<long double, 2, 1> h_gradient( saddle_params<long double> const&, long double, long double );
extern template Eigen::Matrix<double, 2, 2> hessian_h( saddle_params<double> const&, double, double );
extern template Eigen::Matrix<long double, 2, 2> hessian_h( saddle_params<long double> const&, long double, long double );
extern template double r4_cubic_root( saddle_params<double> const& );
extern template long double r4_cubic_root( saddle_params<long double> const& );
extern template saddle_point<double> critical_point( saddle_family, saddle_params<double> const& );
extern template saddle_point<long double> critical_point( saddle_family, saddle_params<long double> const& );
extern template double saddle_log2_estimate( saddle_point<double> const& );
extern template long double saddle_log2_estimate( saddle_point<long double> const& );
extern template double objective_t3( objective_params<double> const& );
extern template long double objective_t3( objective_params<long double> const& );
extern template double objective_t4( objective_params<double> const& );
extern template long double objective_t4( objective_params<long double> const& );

} // namespace orbitforge
