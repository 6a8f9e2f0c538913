#pragma once

#include "finset.hpp"
#include "law_report.hpp"
#include "container.hpp"
#include "directed.hpp"
#include "iso.hpp"
#include "category.hpp"
#include "constructions.hpp"
#include "interp.hpp"
#include "enumerate.hpp"
#include "examples.hpp"
#include "json_io.hpp"
