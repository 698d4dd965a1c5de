// Umbrella header for the intermediated-interaction equilibrium toolkit.
#ifndef MIDDLEMAN_MIDDLEMAN_HPP
#define MIDDLEMAN_MIDDLEMAN_HPP

#include "core.hpp"
#include "game.hpp"
#include "benefit.hpp"
#include "hedonic.hpp"
#include "ambiguity.hpp"
#include "activity.hpp"
#include "scenario.hpp"
#include "report.hpp"

#endif // MIDDLEMAN_MIDDLEMAN_HPP
