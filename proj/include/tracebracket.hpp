#pragma once

#include "tracebracket/ring.hpp"
#include "tracebracket/biquandle.hpp"
#include "tracebracket/diagram.hpp"
#include "tracebracket/coloring.hpp"
#include "tracebracket/bracket.hpp"
#include "tracebracket/trace.hpp"
#include "tracebracket/trace_moves.hpp"
#include "tracebracket/search.hpp"
