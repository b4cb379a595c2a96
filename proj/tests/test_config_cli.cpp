#include <doctest.h>

#include "rydmech/builders.hpp"
