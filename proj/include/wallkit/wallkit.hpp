#pragma once
// Umbrella include. io.hpp is left out on purpose: it pulls in the vendored
// single-header json, which library consumers may not have on their path.

#include <wallkit/arrangement.hpp>
#include <wallkit/circuits.hpp>
#include <wallkit/errors.hpp>
#include <wallkit/examples.hpp>
#include <wallkit/groupoid.hpp>
#include <wallkit/ineq.hpp>
#include <wallkit/ktheory.hpp>
#include <wallkit/matrix.hpp>
#include <wallkit/rational.hpp>
#include <wallkit/semistab.hpp>
#include <wallkit/torusdata.hpp>
