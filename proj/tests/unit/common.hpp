#pragma once

#include <doctest.h>

#include <string>

#include "../support/support.hpp"

/// Runs `expr` and requires a catfield::Error with the given code.
#define CHECK_CODE(expr, expected)                                           \
  do {                                                                       \
    std::string caught_code_ = "<no error>";                                 \
    try {                                                                    \
      (void)(expr);                                                          \
    } catch (const catfield::Error& e) {                                     \
      caught_code_ = e.code();                                               \
    }                                                                        \
    CHECK_MESSAGE(caught_code_ == (expected), "got " << caught_code_);       \
  } while (false)
