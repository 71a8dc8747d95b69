#pragma once

#include "treelink/census.hpp"
#include "treelink/enumeration.hpp"
#include "treelink/json_io.hpp"
#include "treelink/link_diagram.hpp"
#include "treelink/pl_map.hpp"
#include "treelink/render.hpp"
#include "treelink/tangles.hpp"
#include "treelink/tree.hpp"
#include "treelink/tree_pair.hpp"
