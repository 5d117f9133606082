#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace radfact {

enum class Exec { Serial, Parallel };

// Runs body(i) for i in [0, n) and returns the failure with the smallest index, so the
// reported witness does not depend on thread scheduling. body returns nullopt on success.
template <class Body>
std::optional<std::pair<std::size_t, std::string>> first_failure(std::size_t n, Body&& body,
                                                                 Exec exec = Exec::Parallel) {
  std::vector<std::optional<std::string>> results(n);
  auto run = [&](std::size_t i) {
    try {
      results[i] = body(i);
    } catch (const std::exception& e) {
      results[i] = std::string("exception: ") + e.what();
    }
  };
  if (exec == Exec::Parallel) {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) run(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i]) return std::make_pair(i, *results[i]);
  }
  return std::nullopt;
}

// Maps body over [0, n) and keeps the results in index order.
template <class T, class Body>
std::vector<T> parallel_map(std::size_t n, Body&& body, Exec exec = Exec::Parallel) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t i) {
    try {
      out[i] = body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Exec::Parallel) {
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) run(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) run(i);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace radfact
