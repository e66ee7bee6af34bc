// Copyright (c) 2026 evonat contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace evonat {

// Base type for every condition the library raises on purpose. The CLI maps
// subclasses onto process exit codes, so throw the most specific one.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An evidence table or sample list carries no mass at all.
struct EmptyEvidence : Error {
  using Error::Error;
};

// Dimensions of an input do not match what the receiver was built for.
struct ShapeError : Error {
  using Error::Error;
};

// Input is well-formed but has no usable signal: a single class, zero
// variance, all-identical pairs, a non-positive energy delta.
struct DegenerateInput : Error {
  using Error::Error;
};

// A computation produced non-finite numbers.
struct NumericalError : Error {
  using Error::Error;
};

// Two architectures differ by more than one incremental edit.
struct NotIncremental : Error {
  using Error::Error;
};

// A run configuration is missing, malformed, or inconsistent.
struct ConfigError : Error {
  using Error::Error;
};

// An architecture violates the active resource constraints; the message
// lists the violated constraint names.
struct InfeasibleArchitecture : Error {
  using Error::Error;
};

}  // namespace evonat
