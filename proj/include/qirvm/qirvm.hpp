#pragma once

#include "qirvm/backend.hpp"
#include "qirvm/errors.hpp"
#include "qirvm/frontend.hpp"
#include "qirvm/gates.hpp"
#include "qirvm/interpreter.hpp"
#include "qirvm/program.hpp"
#include "qirvm/recorder.hpp"
#include "qirvm/registry.hpp"
#include "qirvm/rng.hpp"
#include "qirvm/statevector.hpp"
#include "qirvm/trace_backend.hpp"
