#pragma once

#include <stdexcept>
#include <string>

namespace cfgtc {

/* Base class for every domain error raised by the library. The CLI maps these to exit code 1. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class SpecMismatch : public Error {
public:
    using Error::Error;
};

class UnsupportedSpec : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class StepTooCoarse : public Error {
public:
    using Error::Error;
};

class RadiusTooLarge : public Error {
public:
    using Error::Error;
};

class OffGridTime : public Error {
public:
    using Error::Error;
};

class PlanningFailed : public Error {
public:
    using Error::Error;
};

}  // namespace cfgtc
