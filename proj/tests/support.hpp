#pragma once

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

// Always-on checks; never compiled out.
#define REQUIRE(cond)                                                                  \
  do {                                                                                 \
    if (!(cond)) {                                                                     \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  " #cond << "\n";     \
      std::exit(1);                                                                    \
    }                                                                                  \
  } while (0)

#define REQUIRE_MSG(cond, msg)                                                         \
  do {                                                                                 \
    if (!(cond)) {                                                                     \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  " << msg << "\n";    \
      std::exit(1);                                                                    \
    }                                                                                  \
  } while (0)

#define REQUIRE_THROWS(expr, ExceptionType)                                            \
  do {                                                                                 \
    bool caught_ = false;                                                              \
    try {                                                                              \
      (void)(expr);                                                                    \
    } catch (const ExceptionType&) {                                                   \
      caught_ = true;                                                                  \
    }                                                                                  \
    REQUIRE_MSG(caught_, "expected " #ExceptionType " from " #expr);                   \
  } while (0)

inline void require_close(double a, double b, double tol, const char* what) {
  if (!(std::abs(a - b) <= tol)) {
    std::cerr << "[FAIL] " << what << ": " << a << " vs " << b << " (tol " << tol << ")\n";
    std::exit(1);
  }
}

inline void pass(const char* name) { std::cout << "[PASS] " << name << "\n"; }
