#include "ddero/parallel.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>

#ifdef DDERO_HAVE_OPENMP
#include <omp.h>
#endif

namespace ddero {

int parallel_threads() {
#ifdef DDERO_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void for_each_index(std::size_t count, Execution exec,
                    const std::function<void(std::size_t)>& body) {
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#ifdef DDERO_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

LinearSystem assemble_conditions(
    const std::vector<Parameter>& params,
    const std::function<VectorExpression(std::size_t)>& image,
    const VectorExpression& offset) {
  std::vector<VectorExpression> images(params.size());
  for_each_index(params.size(), Execution::parallel,
                 [&](std::size_t i) { images[i] = image(i); });

  // Row key (component, monomial). Parameters are visited in ascending
  // order, so each row's term list is appended already sorted.
  struct Row {
    Rational constant;
    std::vector<CoefficientForm::Term> terms;
  };
  std::map<std::pair<std::size_t, Monomial>, Row> rows;
  std::vector<std::size_t> order(params.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return params[a] < params[b]; });
  for (std::size_t idx : order) {
    const auto& img = images[idx];
    for (std::size_t comp = 0; comp < img.size(); ++comp)
      for (const auto& [m, c] : img[comp].terms()) {
        auto& row = rows[{comp, m}];
        if (!row.terms.empty() && row.terms.back().first == params[idx])
          row.terms.back().second += c.constant();
        else
          row.terms.emplace_back(params[idx], c.constant());
      }
  }
  for (std::size_t comp = 0; comp < offset.size(); ++comp)
    for (const auto& [m, c] : offset[comp].terms())
      rows[{comp, m}].constant += c.constant();

  LinearSystem sys;
  sys.equations.reserve(rows.size());
  for (auto& [key, row] : rows) {
    std::erase_if(row.terms, [](const CoefficientForm::Term& t) {
      return sgn(t.second) == 0;
    });
    if (row.terms.empty() && sgn(row.constant) == 0) continue;
    sys.equations.push_back(
        CoefficientForm::from_sorted(row.constant, std::move(row.terms)));
  }
  return sys;
}

LinearSystem collect_conditions(const VectorExpression& e) {
  LinearSystem sys;
  for (const auto& x : e) collect_zero_conditions(x, sys);
  return sys;
}

}  // namespace ddero
