#ifndef TOPOFILT_TOPOFILT_HPP
#define TOPOFILT_TOPOFILT_HPP

#include "error.hpp"
#include "simplicial.hpp"
#include "sheaf.hpp"
#include "filters.hpp"
#include "engine.hpp"
#include "io.hpp"

#endif // TOPOFILT_TOPOFILT_HPP
