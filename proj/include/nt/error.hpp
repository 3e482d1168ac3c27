#ifndef NT_ERROR_HPP
#define NT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nt {

// Every failure the library can signal. Callers that degrade gracefully
// (the check runner) switch on the code; everything else just propagates.
enum class errc {
  reducible_polynomial,
  not_a_ring,
  missing_basis,
  not_maximal,
  index_divisor,
  zero_element,
  zero_ideal,
  uncertified_result,
  units_unavailable,
  bad_supplied_unit,
  witness_not_found,
  not_an_embedding,
  not_an_automorphism,
  not_cyclic_over_base,
  ill_formed_hom,
  infinite_cohomology,
  resolvent_exhausted,
  unsupported_place,
  unsupported_local_degree,
  parse_error,
  verification_error,
  io_error,
  internal,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace nt

#endif
