#pragma once

#include "hopf/error.hpp"
#include "hopf/matrix.hpp"
#include "hopf/complex_vector.hpp"
#include "hopf/su11.hpp"
#include "hopf/heisenberg.hpp"
#include "hopf/bundle.hpp"
#include "hopf/curves.hpp"
#include "hopf/connection.hpp"
#include "hopf/holonomy.hpp"
#include "hopf/experiment.hpp"
