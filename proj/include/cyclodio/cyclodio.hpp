#pragma once

#include "cyclodio/ball.hpp"
#include "cyclodio/cases.hpp"
#include "cyclodio/error.hpp"
#include "cyclodio/lll.hpp"
#include "cyclodio/matveev.hpp"
#include "cyclodio/numberfield.hpp"
#include "cyclodio/padic.hpp"
#include "cyclodio/pipeline.hpp"
#include "cyclodio/poly.hpp"
#include "cyclodio/realalg.hpp"
#include "cyclodio/reduction.hpp"
