#pragma once

#include "zakframe/catalog.hpp"
#include "zakframe/duality.hpp"
#include "zakframe/gabor.hpp"
#include "zakframe/instances.hpp"
#include "zakframe/io.hpp"
#include "zakframe/oracle.hpp"
#include "zakframe/super.hpp"
