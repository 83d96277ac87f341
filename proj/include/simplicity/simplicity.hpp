#pragma once

#include "bits.hpp"
#include "codec.hpp"
#include "errors.hpp"
#include "generation.hpp"
#include "generation_model.hpp"
#include "io.hpp"
#include "knowledge.hpp"
#include "proposition.hpp"
#include "relevance.hpp"
