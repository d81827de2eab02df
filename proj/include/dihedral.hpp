#pragma once

#include "dihedral/errors.hpp"
#include "dihedral/linalg.hpp"
#include "dihedral/seifert.hpp"
#include "dihedral/cover.hpp"
#include "dihedral/obstruction.hpp"
#include "dihedral/signatures.hpp"
#include "dihedral/io.hpp"
#include "dihedral/report.hpp"
#include "dihedral/scan.hpp"
#include "dihedral/selftest.hpp"
