#pragma once

#include <stdexcept>
#include <string>

namespace skoo {

// Base for every error raised by the library. Subclasses only refine the
// category; the message always names the offending identifier.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IriError : public Error {
public:
    using Error::Error;
};

class PrefixError : public Error {
public:
    using Error::Error;
};

class AxiomKindError : public Error {
public:
    using Error::Error;
};

class UnknownClassError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class RuleError : public Error {
public:
    using Error::Error;
};

class TransformError : public Error {
public:
    using Error::Error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace skoo
