#pragma once

#include "para/corpus.hpp"
#include "para/dictionary.hpp"
#include "para/error.hpp"
#include "para/fol.hpp"
#include "para/proto.hpp"
#include "para/reasoner.hpp"
#include "para/renderer.hpp"
#include "para/smnist.hpp"
#include "para/tiler.hpp"
#include "para/translator.hpp"
