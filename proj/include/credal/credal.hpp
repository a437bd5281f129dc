#pragma once

#include "credal/acceptance.hpp"
#include "credal/belief.hpp"
#include "credal/confidence.hpp"
#include "credal/error.hpp"
#include "credal/eu.hpp"
#include "credal/interval.hpp"
#include "credal/ordering.hpp"
#include "credal/problem.hpp"
#include "credal/sequence.hpp"
