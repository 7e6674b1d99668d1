#pragma once

#include "alphabet.hpp"
#include "ca.hpp"
#include "checked.hpp"
#include "intmat.hpp"
#include "io.hpp"
#include "lattice.hpp"
#include "onedim.hpp"
#include "projlim.hpp"
#include "quotient.hpp"
#include "rule.hpp"
