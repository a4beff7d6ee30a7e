#pragma once

#include "nnspectra/asymptotic.hpp"
#include "nnspectra/congruence.hpp"
#include "nnspectra/cover.hpp"
#include "nnspectra/errors.hpp"
#include "nnspectra/induced_matching.hpp"
#include "nnspectra/laws.hpp"
#include "nnspectra/matrix.hpp"
#include "nnspectra/matrix_io.hpp"
#include "nnspectra/monomial.hpp"
#include "nnspectra/nnrank.hpp"
#include "nnspectra/rank.hpp"
#include "nnspectra/rational.hpp"
#include "nnspectra/rectangles.hpp"
#include "nnspectra/report_json.hpp"
#include "nnspectra/simplex.hpp"
#include "nnspectra/triangular.hpp"
#include "nnspectra/witness.hpp"
