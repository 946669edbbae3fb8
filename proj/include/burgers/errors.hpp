#pragma once

#include <stdexcept>
#include <string>

namespace burgers {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CodecError : Error {
    using Error::Error;
};
struct UnmatchedFlexible : Error {
    long long index;
    explicit UnmatchedFlexible(long long i)
        : Error("unmatched flexible order at index " + std::to_string(i)), index(i) {}
};
struct NotReached : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};
struct OutOfCone : Error {
    using Error::Error;
};
struct DegenerateSurvival : Error {
    using Error::Error;
};
struct NotClosed : Error {
    using Error::Error;
};
struct FlexiblePresent : Error {
    using Error::Error;
};
struct Exhausted : Error {
    using Error::Error;
};
struct InsufficientHits : Error {
    using Error::Error;
};

} // namespace burgers
