#pragma once

#include "ksforge/algebra.hpp"
#include "ksforge/errors.hpp"
#include "ksforge/fixtures.hpp"
#include "ksforge/io.hpp"
#include "ksforge/ksset.hpp"
#include "ksforge/parallel.hpp"
#include "ksforge/parity.hpp"
#include "ksforge/proof.hpp"
#include "ksforge/ray_system.hpp"
#include "ksforge/transform.hpp"
