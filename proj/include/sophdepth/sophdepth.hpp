#pragma once

#include "sophdepth/bitstring.hpp"
#include "sophdepth/codegen.hpp"
#include "sophdepth/constructions.hpp"
#include "sophdepth/enumeration.hpp"
#include "sophdepth/measures.hpp"
#include "sophdepth/report.hpp"
#include "sophdepth/vm.hpp"
