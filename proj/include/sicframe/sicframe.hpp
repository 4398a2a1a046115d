#pragma once

#include "sicframe/averages.hpp"
#include "sicframe/errors.hpp"
#include "sicframe/framepot.hpp"
#include "sicframe/heisenberg.hpp"
#include "sicframe/numcore.hpp"
#include "sicframe/records.hpp"
#include "sicframe/sicsearch.hpp"
#include "sicframe/subspace.hpp"
