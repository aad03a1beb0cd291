#pragma once

#include "specbound/bounds.hpp"
#include "specbound/errors.hpp"
#include "specbound/io.hpp"
#include "specbound/kernel.hpp"
#include "specbound/matrix.hpp"
#include "specbound/oracle.hpp"
#include "specbound/perron.hpp"
