#pragma once

#include "alphabet.hpp"
#include "bench.hpp"
#include "bit_vector.hpp"
#include "bp_tree.hpp"
#include "builder.hpp"
#include "elias_fano.hpp"
#include "errors.hpp"
#include "index.hpp"
#include "index_file.hpp"
#include "int_vector.hpp"
#include "matcher.hpp"
#include "pattern_io.hpp"
#include "serialize.hpp"
#include "transitions.hpp"
