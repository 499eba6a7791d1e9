// Copyright 2026 The darkcount Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace darkcount {

/// Invalid caller input: out-of-range sizes, mismatched dimensions, bad specs.
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed or could not meet its accuracy bound.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size cap would be exceeded.
class ResourceError : public std::length_error {
public:
    explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw ArgumentError(msg);
}

}  // namespace detail

}  // namespace darkcount
