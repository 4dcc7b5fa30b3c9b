#include <doctest.h>

#include "bufsim/types.hpp"
#include "helpers.hpp"

using namespace bufsim;
using bufsim::testing::make_trace;

TEST_CASE("a well-formed trace validates") {
  const Trace trace = make_trace(2, 4, {{0, 1}, {0, 2}, {1, 1}, {3, 2}});
  CHECK(validate_trace(trace).ok());
}

TEST_CASE("empty trace validates") {
  CHECK(validate_trace(Trace{{1, 1}, {}}).ok());
}

TEST_CASE("invalid config is flagged") {
  CHECK_FALSE(validate_trace(Trace{{0, 4}, {}}).ok());
  CHECK_FALSE(validate_trace(Trace{{2, 0}, {}}).ok());
}

TEST_CASE("port out of range is flagged") {
  Trace trace = make_trace(2, 4, {{0, 1}});
  trace.packets[0].port = 3;
  CHECK_FALSE(validate_trace(trace).ok());
  trace.packets[0].port = 0;
  CHECK_FALSE(validate_trace(trace).ok());
}

TEST_CASE("slots must be nonnegative and nondecreasing") {
  Trace trace = make_trace(2, 4, {{1, 1}, {0, 1}});
  CHECK_FALSE(validate_trace(trace).ok());
  trace = make_trace(2, 4, {{0, 1}});
  trace.packets[0].slot = -1;
  CHECK_FALSE(validate_trace(trace).ok());
}

TEST_CASE("ids must be dense in arrival order") {
  Trace trace = make_trace(2, 4, {{0, 1}, {0, 2}});
  trace.packets[1].id = 5;
  CHECK_FALSE(validate_trace(trace).ok());
}
