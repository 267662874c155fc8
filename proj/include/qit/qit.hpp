#pragma once

#include "qit/errors.hpp"
#include "qit/cmatrix.hpp"
#include "qit/random.hpp"
#include "qit/qstate.hpp"
#include "qit/entropy.hpp"
#include "qit/classical_info.hpp"
#include "qit/erasure.hpp"
#include "qit/holevo.hpp"
#include "qit/qcompress.hpp"
#include "qit/entangle.hpp"
#include "qit/io.hpp"
#include "qit/report.hpp"
