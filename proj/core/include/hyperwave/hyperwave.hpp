#pragma once

#include "hyperwave/bispectral.hpp"
#include "hyperwave/confluence.hpp"
#include "hyperwave/core.hpp"
#include "hyperwave/errors.hpp"
#include "hyperwave/hcseries.hpp"
#include "hyperwave/lattice.hpp"
#include "hyperwave/operators.hpp"
#include "hyperwave/special.hpp"
#include "hyperwave/table_io.hpp"
#include "hyperwave/wavefn.hpp"
