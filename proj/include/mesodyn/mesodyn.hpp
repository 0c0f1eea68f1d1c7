#pragma once

#include "mesodyn/coupling.hpp"
#include "mesodyn/errors.hpp"
#include "mesodyn/grid.hpp"
#include "mesodyn/master_equation.hpp"
#include "mesodyn/scenario.hpp"
#include "mesodyn/trajectories.hpp"
#include "mesodyn/wigner.hpp"
