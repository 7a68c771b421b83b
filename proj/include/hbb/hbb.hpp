#ifndef HBB_HBB_HPP
#define HBB_HBB_HPP

#include "hbb/error.hpp"
#include "hbb/fields.hpp"
#include "hbb/polys.hpp"
#include "hbb/linalg.hpp"
#include "hbb/moments.hpp"
#include "hbb/border.hpp"
#include "hbb/decomp.hpp"
#include "hbb/apps.hpp"
#include "hbb/bench.hpp"
#include "hbb/io.hpp"

#endif
