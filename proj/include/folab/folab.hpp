#pragma once

#include "folab/errors.hpp"
#include "folab/rational.hpp"
#include "folab/monomial.hpp"
#include "folab/polynomial.hpp"
#include "folab/linalg.hpp"
#include "folab/groebner.hpp"
#include "folab/ideal_ops.hpp"
#include "folab/graded.hpp"
#include "folab/hilbert.hpp"
#include "folab/form_file.hpp"
#include "folab/decomposition.hpp"
#include "folab/modules.hpp"
#include "folab/resolution.hpp"
#include "folab/exterior.hpp"
#include "folab/foliation.hpp"
