#pragma once

#include "verifier/checks.hpp"
#include "verifier/data.hpp"
#include "verifier/report.hpp"
