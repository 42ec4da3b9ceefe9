#pragma once

#include <stdexcept>
#include <string>

namespace nscap {

// Exit codes used by the command line tool.
enum ExitCode {
  exit_ok = 0,
  exit_usage = 1,
  exit_consistency = 2,
  exit_io = 3,
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument violates an operation's precondition.
struct DomainError : Error {
  using Error::Error;
};

// Two independently computed results disagree.
struct ConsistencyError : Error {
  using Error::Error;
};

// A file or stream could not be read or written.
struct IoError : Error {
  using Error::Error;
};

// A polyhedral computation hit an unbounded or inconsistent system.
struct GeometryError : Error {
  using Error::Error;
};

// An operation ran before its prerequisites were supplied.
struct StateError : Error {
  using Error::Error;
};

// Bad command line usage.
struct UsageError : Error {
  using Error::Error;
};

}  // namespace nscap
