#pragma once

// Everything in one include.
#include "torsorforge/error.hpp"
#include "torsorforge/permutation.hpp"
#include "torsorforge/search_options.hpp"
#include "torsorforge/finite_group.hpp"
#include "torsorforge/builders.hpp"
#include "torsorforge/matrix_groups.hpp"
#include "torsorforge/automorphisms.hpp"
#include "torsorforge/semidirect.hpp"
#include "torsorforge/word.hpp"
#include "torsorforge/presentation.hpp"
#include "torsorforge/graph.hpp"
#include "torsorforge/homs.hpp"
#include "torsorforge/pi_group.hpp"
#include "torsorforge/crossed.hpp"
#include "torsorforge/h1.hpp"
#include "torsorforge/semidirect_oracle.hpp"
#include "torsorforge/mapped.hpp"
#include "torsorforge/cech.hpp"
#include "torsorforge/covering.hpp"
#include "torsorforge/group_covering.hpp"
#include "torsorforge/torsor.hpp"
#include "torsorforge/frame.hpp"
