#include "error.hpp"

namespace corrfun {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::parse: return "parse error";
    case Errc::not_a_lattice: return "not a lattice";
    case Errc::dimension: return "dimension mismatch";
    case Errc::singular: return "not invertible";
    case Errc::bound: return "bound exhausted";
    case Errc::not_commutative: return "not commutative";
    case Errc::not_split: return "not split";
    case Errc::hypothesis: return "hypothesis violated";
    case Errc::verification: return "verification failed";
    case Errc::unknown_name: return "unknown name";
    case Errc::io: return "io error";
    case Errc::internal: return "internal error";
  }
  return "unknown error";
}

}  // namespace corrfun
