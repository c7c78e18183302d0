#pragma once

// Everything except the HTTP front end.

#include "coding.hpp"
#include "constructions.hpp"
#include "core.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "graph.hpp"
#include "membership.hpp"
#include "parity.hpp"
#include "random.hpp"
#include "service.hpp"
#include "verify.hpp"
#include "wadge.hpp"
#include "wlab_format.hpp"
