#include "confarc/halfmeasure.hpp"

#include "quadrature.hpp"

namespace confarc {

double half_measure_quadrature(const std::function<double(double)>& l_ddot, double a, double b, double tol) {
  if (!(tol > 0)) throw InputError("half_measure_quadrature: tol must be positive");
  auto f = [&l_ddot](double t) { return half_length_element(l_ddot(t)); };
  return detail::integrate_split(f, a, b, tol, "half_measure_quadrature").value;
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& error, int last) {
  if (h.size() != error.size() || last < 2 || static_cast<int>(h.size()) < last) {
    throw InputError("fitted_order: need at least `last` matching points");
  }
  const std::size_t start = h.size() - static_cast<std::size_t>(last);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = start; i < h.size(); ++i) {
    if (!(h[i] > 0) || !(error[i] > 0)) throw NumericalError("fitted_order: non-positive step or error");
    const double x = std::log(h[i]), y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = last;
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace confarc
