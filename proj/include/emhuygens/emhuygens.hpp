// emhuygens.hpp -- umbrella header
#pragma once

#include "emhuygens/fields.hpp"
#include "emhuygens/huygens.hpp"
#include "emhuygens/parallel.hpp"
#include "emhuygens/partition.hpp"
#include "emhuygens/pauli.hpp"
#include "emhuygens/quadrature.hpp"
#include "emhuygens/runner.hpp"
#include "emhuygens/scenario.hpp"
#include "emhuygens/signature.hpp"
#include "emhuygens/surfaces.hpp"
#include "emhuygens/vec.hpp"
#include "emhuygens/version.hpp"
