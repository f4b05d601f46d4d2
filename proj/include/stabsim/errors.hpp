// Copyright 2026 The stabsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace stabsim {

// A broken internal invariant; the CLI maps this to exit code 4.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

// A request that exceeds a configured cap; the CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double predicted_cost)
      : std::runtime_error(what), predicted_cost_(predicted_cost) {}
  double predicted_cost() const { return predicted_cost_; }

 private:
  double predicted_cost_;
};

#define STABSIM_CHECK(cond, msg)                  \
  do {                                            \
    if (!(cond)) throw ::stabsim::InvariantError(msg); \
  } while (0)

}  // namespace stabsim
