#ifndef ISOPART_ISOPART_HPP_
#define ISOPART_ISOPART_HPP_

#include "isopart/asymptotics.hpp"
#include "isopart/cmc_solver.hpp"
#include "isopart/errors.hpp"
#include "isopart/exact_geometry.hpp"
#include "isopart/fixtures.hpp"
#include "isopart/grid_partition.hpp"
#include "isopart/monte_carlo.hpp"
#include "isopart/partition3.hpp"
#include "isopart/partition_ops.hpp"
#include "isopart/reduced_plane.hpp"

#endif  // ISOPART_ISOPART_HPP_
