#pragma once

#include "tdspanner/charging.hpp"
#include "tdspanner/errors.hpp"
#include "tdspanner/generators.hpp"
#include "tdspanner/geometry.hpp"
#include "tdspanner/io.hpp"
#include "tdspanner/monotone_path.hpp"
#include "tdspanner/spanner.hpp"
#include "tdspanner/svg.hpp"
#include "tdspanner/td_graph.hpp"
#include "tdspanner/verify.hpp"
