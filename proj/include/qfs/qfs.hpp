#pragma once

#include "qfs/arith.hpp"
#include "qfs/field.hpp"
#include "qfs/ono.hpp"
#include "qfs/quadform.hpp"
#include "qfs/report.hpp"
#include "qfs/survey.hpp"
