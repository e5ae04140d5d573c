#pragma once

// Embedded copies of the JSON schemas shipped under docs/schemas/. Inputs are
// validated against these on load; the files exist for external consumers and
// a test keeps both copies in sync.

namespace zerocycle::schemas {

inline constexpr const char* polynomial = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "polynomial",
  "type": "object",
  "required": ["vars", "terms"],
  "additionalProperties": false,
  "properties": {
    "vars": {
      "type": "array",
      "minItems": 1,
      "items": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"}
    },
    "terms": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["exp"],
        "additionalProperties": false,
        "properties": {
          "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
          "re": {"type": "number"},
          "im": {"type": "number"},
          "re_rat": {"type": "string", "pattern": "^[+-]?[0-9]+(/[0-9]+)?$"},
          "im_rat": {"type": "string", "pattern": "^[+-]?[0-9]+(/[0-9]+)?$"}
        }
      }
    },
    "param": {"type": "string"}
  }
})JSON";

inline constexpr const char* family = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "family",
  "type": "object",
  "required": ["vars", "terms", "param"],
  "additionalProperties": false,
  "properties": {
    "vars": {
      "type": "array",
      "minItems": 2,
      "items": {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"}
    },
    "terms": {
      "type": "array",
      "items": {
        "type": "object",
        "required": ["exp"],
        "additionalProperties": false,
        "properties": {
          "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
          "re": {"type": "number"},
          "im": {"type": "number"},
          "re_rat": {"type": "string", "pattern": "^[+-]?[0-9]+(/[0-9]+)?$"},
          "im_rat": {"type": "string", "pattern": "^[+-]?[0-9]+(/[0-9]+)?$"}
        }
      }
    },
    "param": {"type": "string"}
  }
})JSON";

inline constexpr const char* region = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "region",
  "type": "object",
  "required": ["center", "radii"],
  "additionalProperties": false,
  "properties": {
    "center": {
      "type": "array",
      "minItems": 1,
      "items": {
        "type": "object",
        "required": ["re", "im"],
        "additionalProperties": false,
        "properties": {"re": {"type": "number"}, "im": {"type": "number"}}
      }
    },
    "radii": {
      "type": "array",
      "minItems": 1,
      "items": {"type": "number", "exclusiveMinimum": 0}
    }
  }
})JSON";

inline constexpr const char* request = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "request",
  "type": "object",
  "required": ["command", "seed", "options"],
  "additionalProperties": false,
  "properties": {
    "command": {
      "type": "string",
      "enum": ["order", "degree", "dist", "slice-degree", "loj-verify", "loj-estimate",
               "family-orders", "family-kuratowski", "family-tworzewski", "family-fibres",
               "family-distance", "family-properness", "family-uniform-loj"]
    },
    "input": {"type": "string"},
    "input2": {"type": "string"},
    "seed": {"type": "integer", "minimum": 0},
    "options": {"type": "object"}
  }
})JSON";

inline constexpr const char* report = R"JSON({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "report",
  "type": "object",
  "required": ["request", "tool", "payload", "warnings"],
  "additionalProperties": false,
  "properties": {
    "request": {"type": "object"},
    "tool": {
      "type": "object",
      "required": ["name", "version"],
      "additionalProperties": false,
      "properties": {"name": {"type": "string"}, "version": {"type": "string"}}
    },
    "payload": {"type": "object"},
    "warnings": {"type": "array", "items": {"type": "string"}},
    "wall_time_ms": {"type": "number"}
  }
})JSON";

}  // namespace zerocycle::schemas
