#pragma once

// Umbrella header: the whole library in one include.

#include "pconn/chain_complex.hpp"
#include "pconn/circle_morse.hpp"
#include "pconn/connection.hpp"
#include "pconn/errors.hpp"
#include "pconn/flow.hpp"
#include "pconn/gain_graph.hpp"
#include "pconn/group.hpp"
#include "pconn/group_iso.hpp"
#include "pconn/group_ring.hpp"
#include "pconn/homology.hpp"
#include "pconn/ints.hpp"
#include "pconn/io.hpp"
#include "pconn/matrix.hpp"
#include "pconn/novikov.hpp"
#include "pconn/poset.hpp"
#include "pconn/smith.hpp"
