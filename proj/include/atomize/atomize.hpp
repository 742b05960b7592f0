#pragma once

#include "atomize/ase.hpp"
#include "atomize/atomic_analysis.hpp"
#include "atomize/dimacs.hpp"
#include "atomize/errors.hpp"
#include "atomize/formula.hpp"
#include "atomize/oracle.hpp"
#include "atomize/random_cnf.hpp"
#include "atomize/records.hpp"
#include "atomize/report.hpp"
#include "atomize/sat_engine.hpp"
