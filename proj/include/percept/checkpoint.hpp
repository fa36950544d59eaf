/* Copyright 2026 The Percept Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef PERCEPT_CHECKPOINT_HPP_
#define PERCEPT_CHECKPOINT_HPP_

#include <iosfwd>
#include <string>
#include <utility>

#include "json.hpp"
#include "percept/masks.hpp"
#include "percept/nn.hpp"

namespace percept::models {

// Self-describing container: magic, JSON manifest (architecture id + params,
// training info, tensor shapes, named binary sections), then raw
// little-endian doubles per tensor, then the sections. Inpainter checkpoints
// embed the MaskSet they were trained against.

void save_classifier(const std::string& path, const Classifier& cls,
                     const nlohmann::json& train_info);
Classifier load_classifier(const std::string& path);

void save_inpainter(const std::string& path, const Inpainter& inp,
                    const masks::MaskSet& set,
                    const nlohmann::json& train_info);
std::pair<Inpainter, masks::MaskSet> load_inpainter(const std::string& path);

void save_generator(const std::string& path, const SrGenerator& gen,
                    const nlohmann::json& train_info);
SrGenerator load_generator(const std::string& path);

// manifest without loading tensors; FormatError on anything malformed
nlohmann::json checkpoint_manifest(const std::string& path);
std::string checkpoint_arch(const std::string& path);

// stream forms, used by pipeline bundles embedding whole checkpoints
void save_classifier_stream(std::ostream& os, const Classifier& cls,
                            const nlohmann::json& train_info);
Classifier load_classifier_stream(std::istream& is);
void save_inpainter_stream(std::ostream& os, const Inpainter& inp,
                           const masks::MaskSet& set,
                           const nlohmann::json& train_info);
std::pair<Inpainter, masks::MaskSet> load_inpainter_stream(std::istream& is);
void save_generator_stream(std::ostream& os, const SrGenerator& gen,
                           const nlohmann::json& train_info);
SrGenerator load_generator_stream(std::istream& is);

}  // namespace percept::models

#endif  // PERCEPT_CHECKPOINT_HPP_
