#include "mla/rational.hpp"

// Header-only in practice; this TU pins the header into the build so
// compile errors surface even if nothing else includes it yet.

namespace mla {}
