#pragma once

#include "polytor/covers.hpp"
#include "polytor/cyclotomic.hpp"
#include "polytor/errors.hpp"
#include "polytor/fox.hpp"
#include "polytor/laurent.hpp"
#include "polytor/matrix.hpp"
#include "polytor/parse.hpp"
#include "polytor/presentation.hpp"
#include "polytor/rational.hpp"
#include "polytor/ratfunc.hpp"
#include "polytor/render.hpp"
#include "polytor/reps.hpp"
#include "polytor/schreier.hpp"
#include "polytor/torsion.hpp"
#include "polytor/word.hpp"
