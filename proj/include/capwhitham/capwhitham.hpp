#pragma once

#include "capwhitham/errors.hpp"
#include "capwhitham/symbol.hpp"
#include "capwhitham/coefficients.hpp"
#include "capwhitham/symbreak.hpp"
#include "capwhitham/fourier.hpp"
#include "capwhitham/wave_solver.hpp"
#include "capwhitham/io/config.hpp"
#include "capwhitham/io/csv.hpp"
#include "capwhitham/io/json_io.hpp"
#include "capwhitham/io/svg.hpp"
