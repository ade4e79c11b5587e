#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ksubdiv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class CycleDetected : public Error {
 public:
  using Error::Error;
};

class NoUpperBound : public Error {
 public:
  using Error::Error;
};

class NoLowerBound : public Error {
 public:
  using Error::Error;
};

/// Thrown by join/meet when the minimal (maximal) bounds are not unique.
/// The candidates are kept so callers can report them.
class NotUnique : public Error {
 public:
  NotUnique(const std::string& what, std::vector<int> witnesses)
      : Error(what), witnesses_(std::move(witnesses)) {}
  const std::vector<int>& witnesses() const { return witnesses_; }

 private:
  std::vector<int> witnesses_;
};

class NotComparable : public Error {
 public:
  using Error::Error;
};

class FaceNotPresent : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class NotNested : public Error {
 public:
  using Error::Error;
};

class NotLinearExtension : public Error {
 public:
  using Error::Error;
};

}  // namespace ksubdiv
