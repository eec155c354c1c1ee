// Independent intuitionistic oracle for the atoms/bot/implication fragment,
// a contraction-free calculus in the G4ip style. Deliberately shares no code
// with the sequent provers it is used to validate.
#pragma once

#include "cplkit/prop.hpp"

namespace cplkit {

// True iff the proposition is intuitionistically provable. Throws
// FragmentError on dia/box.
bool ipc_decide(const Prop& goal);

}  // namespace cplkit
