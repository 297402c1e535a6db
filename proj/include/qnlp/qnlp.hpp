// Copyright 2026 The qnlpkit Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Umbrella include for the whole toolkit.
 */
#pragma once

#include "qnlp/core/circuit.hpp"
#include "qnlp/core/circuit_text.hpp"
#include "qnlp/core/errors.hpp"
#include "qnlp/core/gates.hpp"
#include "qnlp/core/rng.hpp"
#include "qnlp/core/state_vector.hpp"
#include "qnlp/diffopt/gradients.hpp"
#include "qnlp/diffopt/observable.hpp"
#include "qnlp/diffopt/optimizer.hpp"
#include "qnlp/embed/checkpoint.hpp"
#include "qnlp/embed/embedding.hpp"
#include "qnlp/embed/training.hpp"
#include "qnlp/qpostr/qpostr.hpp"
#include "qnlp/seqgen/checkpoint.hpp"
#include "qnlp/seqgen/seqgen.hpp"
#include "qnlp/seqgen/training.hpp"
#include "qnlp/text/vocabulary.hpp"
