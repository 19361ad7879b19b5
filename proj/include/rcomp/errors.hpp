#pragma once

#include <stdexcept>
#include <string>

namespace rcomp {

class RcompError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedRlbwt : public RcompError {
 public:
  using RcompError::RcompError;
};

class MalformedFile : public RcompError {
 public:
  using RcompError::RcompError;
};

class InvalidAlpha : public RcompError {
 public:
  using RcompError::RcompError;
};

class SentinelInput : public RcompError {
 public:
  using RcompError::RcompError;
};

class CorruptState : public RcompError {
 public:
  using RcompError::RcompError;
};

class NotMember : public RcompError {
 public:
  using RcompError::RcompError;
};

class NotHeavy : public RcompError {
 public:
  using RcompError::RcompError;
};

#define RCOMP_CHECK(cond, msg)                                              \
  do {                                                                      \
    if (!(cond)) throw ::rcomp::CorruptState(std::string(msg) + " [" #cond "]"); \
  } while (0)

}  // namespace rcomp
