#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace swat {

/// Position of a record in its source file. `line` is 1-based; 0 means the
/// record was synthesized rather than read.
struct Locator {
    std::string file;
    std::size_t line = 0;

    std::string str() const { return file + ":" + std::to_string(line); }
    bool operator==(const Locator&) const = default;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Referential or range violation detected while building a snapshot.
class IntegrityError : public Error {
public:
    IntegrityError(Locator where, const std::string& what)
        : Error(where.str() + ": " + what), where_(std::move(where)) {}

    const Locator& where() const noexcept { return where_; }

private:
    Locator where_;
};

class UnknownIndividual : public Error {
public:
    explicit UnknownIndividual(const std::string& id)
        : Error("unknown individual '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnknownArea : public Error {
public:
    explicit UnknownArea(const std::string& id)
        : Error("unknown expertise area '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class IoError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

/// Caller-supplied parameters violate a precondition (bad counts, weights...).
class InvalidParams : public Error {
public:
    using Error::Error;
};

class EmptyAssignment : public Error {
public:
    EmptyAssignment() : Error("assignment covers no expertise area") {}
};

class CandidateExplosion : public Error {
public:
    CandidateExplosion(double combinations, std::size_t cap)
        : Error("candidate enumeration would produce " + format_count(combinations) +
                " combinations (cap " + std::to_string(cap) + ")"),
          combinations_(combinations),
          cap_(cap) {}

    double combinations() const noexcept { return combinations_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    static std::string format_count(double n) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.0f", n);
        return buf;
    }

    double combinations_;
    std::size_t cap_;
};

class InsufficientAreas : public Error {
public:
    using Error::Error;
};

}  // namespace swat
