#pragma once

#include <stdexcept>
#include <string>

namespace czc {

// Base class for all typed errors raised by this library.  The CLI maps any
// Error that escapes to exit code 2 unless a subcommand documents otherwise.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-domain input: zero denominators, bad JSON fields,
// unparsable literals, inconsistent dataset dimensions.
struct InputError : Error {
  using Error::Error;
};

// k * theta landed on an integer for some rotation number theta, so the
// iterate is degenerate and has no Conley-Zehnder index in this model.
struct DegenerateIterate : Error {
  using Error::Error;
};

// An orbit with non-positive mean index entered an operation that needs
// mean-index growth to terminate (enumeration cutoffs, jump search).
struct NonPositiveMeanIndex : Error {
  using Error::Error;
};

// A homology profile violated the sign/monotonicity hypotheses of the
// operation (e.g. a negative-monotone spec fed to the census).
struct SignMismatch : Error {
  using Error::Error;
};

// An internal cross-check that must hold mathematically failed; indicates a
// bug in this library rather than in the input.
struct InternalInconsistency : Error {
  using Error::Error;
};

// A quantity that must be an exact multiple was not (certificate degree not
// divisible by 2*c_B, iterate not divisible by the required period).
struct NotDivisible : Error {
  using Error::Error;
};

// Ellipsoid axes with a rational pairwise ratio: the induced Reeb flow is not
// non-degenerate, so no dataset is produced.
struct RationalRatio : Error {
  using Error::Error;
};

// A lens-space weight shares a factor with the order p.
struct WeightNotCoprime : Error {
  using Error::Error;
};

// A catalog name that is not recognized at all.
struct UnknownName : Error {
  using Error::Error;
};

// A search ran out of budget before finding a witness.  Never a refutation:
// the underlying theorem is existential, so this only means "raise the
// bound".  The CLI maps it to exit code 3.
struct Exhausted : Error {
  long long bound;
  explicit Exhausted(long long b)
      : Error("search exhausted at bound " + std::to_string(b)), bound(b) {}
};

}  // namespace czc
