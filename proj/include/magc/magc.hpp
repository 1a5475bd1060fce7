#pragma once

#include "magc/analysis.hpp"
#include "magc/bits.hpp"
#include "magc/codec.hpp"
#include "magc/complexity.hpp"
#include "magc/core.hpp"
#include "magc/error.hpp"
#include "magc/family.hpp"
#include "magc/io.hpp"
#include "magc/iso.hpp"
#include "magc/nesting.hpp"
#include "magc/ordering.hpp"
#include "magc/random.hpp"
