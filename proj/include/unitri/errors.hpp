#pragma once

#include <stdexcept>
#include <string>

namespace unitri {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An iterative kernel (eigen, roots) did not reach its tolerance.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

class DependentInput : public Error {
public:
    using Error::Error;
};

/// Two forms share a component over the eliminated variable.
class DegenerateResultant : public Error {
public:
    using Error::Error;
};

/// The pencil dropped to rank <= 2 where a one-dimensional kernel was expected.
class RankDeficientPencil : public Error {
public:
    using Error::Error;
};

class NoSectionZero : public Error {
public:
    using Error::Error;
};

class FlagDegenerate : public Error {
public:
    using Error::Error;
};

class Unsolved : public Error {
public:
    using Error::Error;
};

/// Repeated trials of a counting experiment disagreed.
class UnstableCount : public Error {
public:
    using Error::Error;
};

} // namespace unitri
