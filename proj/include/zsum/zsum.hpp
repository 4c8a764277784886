#pragma once

#include "cli.hpp"
#include "core.hpp"
#include "davenport.hpp"
#include "dihedral.hpp"
#include "errors.hpp"
#include "normalizer.hpp"
#include "report.hpp"
#include "subsum.hpp"
#include "sweep.hpp"
