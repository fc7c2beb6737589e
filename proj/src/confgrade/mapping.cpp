#include "confgrade/mapping.hpp"

#include "confgrade/errors.hpp"
#include "confgrade/text.hpp"
#include "json.hpp"

namespace confgrade {
namespace {

using json = nlohmann::ordered_json;

constexpr std::pair<LineScope, std::string_view> kScopes[] = {
    {LineScope::Whole, "whole"},
    {LineScope::Header, "header"},
    {LineScope::First, "first"},
    {LineScope::Boundary, "boundary"},
};

constexpr std::pair<Condition, std::string_view> kConditions[] = {
    {Condition::Always, "always"},
    {Condition::Prose, "prose"},
    {Condition::StringOnly, "string_only"},
    {Condition::AnnotatedAssignment, "annotated_assignment"},
    {Condition::FirstBinding, "first_binding"},
    {Condition::HasBody, "has_body"},
    {Condition::FunctionDeclarator, "function_declarator"},
    {Condition::NotFunctionDeclarator, "not_function_declarator"},
};

MappingRule rule(OpKind op, LineScope lines = LineScope::Whole,
                 Condition when = Condition::Always) {
  return MappingRule{op, lines, when, "body"};
}

void add(LanguageMapping& m, std::initializer_list<const char*> kinds, MappingRule r) {
  for (const auto* k : kinds) m.nodes[k].push_back(r);
}

void add_c_family(LanguageMapping& m) {
  m.containers = {"compound_statement", "case_statement", "preproc_if",
                  "preproc_ifdef",      "preproc_else",   "preproc_elif"};
  m.functions = {{"function_definition", "body"}};
  m.types = {"struct_specifier", "union_specifier", "enum_specifier"};
  add(m, {"comment"}, rule(OpKind::CMT));
  add(m, {"string_literal"}, rule(OpKind::CMT, LineScope::Whole, Condition::Prose));
  add(m, {"struct_specifier", "union_specifier", "enum_specifier"},
      rule(OpKind::CTD, LineScope::Header, Condition::HasBody));
  add(m, {"function_definition"}, rule(OpKind::FPD, LineScope::Header));
  add(m, {"declaration", "field_declaration"},
      rule(OpKind::FPD, LineScope::Whole, Condition::FunctionDeclarator));
  add(m, {"declaration", "field_declaration"},
      rule(OpKind::VD, LineScope::Whole, Condition::NotFunctionDeclarator));
  add(m, {"preproc_include", "preproc_def", "preproc_function_def", "preproc_call"},
      rule(OpKind::LSO));
  add(m, {"preproc_if", "preproc_ifdef"}, rule(OpKind::LSO, LineScope::Boundary));
  add(m, {"preproc_else", "preproc_elif"}, rule(OpKind::LSO, LineScope::First));
}

LanguageMapping default_c() {
  LanguageMapping m;
  add_c_family(m);
  return m;
}

LanguageMapping default_cpp() {
  LanguageMapping m;
  add_c_family(m);
  m.functions.emplace("lambda_expression", "body");
  m.types.insert("class_specifier");
  add(m, {"raw_string_literal"}, rule(OpKind::CMT, LineScope::Whole, Condition::Prose));
  add(m, {"class_specifier"}, rule(OpKind::CTD, LineScope::Header, Condition::HasBody));
  add(m, {"using_declaration", "namespace_alias_definition"}, rule(OpKind::LSO));
  return m;
}

LanguageMapping default_java() {
  LanguageMapping m;
  m.containers = {"block", "constructor_body", "switch_block_statement_group"};
  m.functions = {{"method_declaration", "body"},
                 {"constructor_declaration", "body"},
                 {"compact_constructor_declaration", "body"},
                 {"lambda_expression", "body"}};
  m.types = {"class_declaration", "interface_declaration", "enum_declaration",
             "record_declaration", "annotation_type_declaration"};
  add(m, {"line_comment", "block_comment"}, rule(OpKind::CMT));
  add(m, {"string_literal", "text_block"}, rule(OpKind::CMT, LineScope::Whole, Condition::Prose));
  add(m,
      {"class_declaration", "interface_declaration", "enum_declaration", "record_declaration",
       "annotation_type_declaration"},
      rule(OpKind::CTD, LineScope::Header, Condition::HasBody));
  add(m, {"method_declaration", "constructor_declaration", "compact_constructor_declaration"},
      rule(OpKind::FPD, LineScope::Header));
  add(m, {"import_declaration", "package_declaration", "annotation", "marker_annotation"},
      rule(OpKind::LSO));
  add(m, {"field_declaration", "local_variable_declaration", "constant_declaration"},
      rule(OpKind::VD));
  return m;
}

LanguageMapping default_python() {
  LanguageMapping m;
  m.containers = {"block"};
  m.functions = {{"function_definition", "body"}, {"lambda", "body"}};
  m.types = {"class_definition"};
  add(m, {"comment"}, rule(OpKind::CMT));
  add(m, {"string"}, rule(OpKind::CMT, LineScope::Whole, Condition::Prose));
  add(m, {"expression_statement"}, rule(OpKind::CMT, LineScope::Whole, Condition::StringOnly));
  add(m, {"expression_statement"},
      rule(OpKind::VD, LineScope::Whole, Condition::AnnotatedAssignment));
  add(m, {"expression_statement"}, rule(OpKind::VD, LineScope::Whole, Condition::FirstBinding));
  add(m, {"class_definition"}, rule(OpKind::CTD, LineScope::Header));
  add(m, {"function_definition"}, rule(OpKind::FPD, LineScope::Header));
  add(m, {"import_statement", "import_from_statement", "future_import_statement", "decorator"},
      rule(OpKind::LSO));
  return m;
}

template <typename E, std::size_t N>
E parse_enum(const std::pair<E, std::string_view> (&table)[N], const std::string& name,
             const char* what) {
  for (const auto& [value, text] : table) {
    if (text == name) return value;
  }
  throw Error(ErrorKind::InvalidConfig, std::string("unknown ") + what + " '" + name + "'");
}

MappingRule rule_from_json(const json& j) {
  MappingRule r;
  const auto op_name = j.is_string() ? j.get<std::string>() : j.at("op").get<std::string>();
  const auto op = parse_op_kind(op_name);
  if (!op) throw Error(ErrorKind::InvalidConfig, "unknown operation '" + op_name + "'");
  r.op = *op;
  if (j.is_object()) {
    if (j.contains("lines")) r.lines = parse_enum(kScopes, j["lines"].get<std::string>(), "line scope");
    if (j.contains("when")) r.when = parse_enum(kConditions, j["when"].get<std::string>(), "condition");
    if (j.contains("body")) r.body_field = j["body"].get<std::string>();
  }
  return r;
}

json rule_to_json(const MappingRule& r) {
  if (r.lines == LineScope::Whole && r.when == Condition::Always && r.body_field == "body") {
    return std::string(to_string(r.op));
  }
  json j;
  j["op"] = std::string(to_string(r.op));
  if (r.lines != LineScope::Whole) j["lines"] = std::string(to_string(r.lines));
  if (r.when != Condition::Always) j["when"] = std::string(to_string(r.when));
  if (r.body_field != "body") j["body"] = r.body_field;
  return j;
}

LanguageMapping language_from_json(const json& j) {
  LanguageMapping m;
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, "language mapping must be an object");
  for (const auto& c : j.value("containers", json::array())) m.containers.insert(c.get<std::string>());
  for (const auto& t : j.value("types", json::array())) m.types.insert(t.get<std::string>());
  const auto functions = j.value("functions", json::object());
  for (const auto& [kind, body] : functions.items()) {
    m.functions.emplace(kind, body.get<std::string>());
  }
  const auto nodes = j.value("nodes", json::object());
  for (const auto& [kind, rules] : nodes.items()) {
    auto& out = m.nodes[kind];
    if (rules.is_array()) {
      for (const auto& r : rules) out.push_back(rule_from_json(r));
    } else {
      out.push_back(rule_from_json(rules));
    }
  }
  return m;
}

json language_to_json(const LanguageMapping& m) {
  json j;
  j["containers"] = json(std::vector<std::string>(m.containers.begin(), m.containers.end()));
  json functions = json::object();
  for (const auto& [k, body] : m.functions) functions[k] = body;
  j["functions"] = functions;
  j["types"] = json(std::vector<std::string>(m.types.begin(), m.types.end()));
  json nodes = json::object();
  for (const auto& [kind, rules] : m.nodes) {
    json arr = json::array();
    for (const auto& r : rules) arr.push_back(rule_to_json(r));
    nodes[kind] = arr.size() == 1 ? arr[0] : arr;
  }
  j["nodes"] = nodes;
  return j;
}

}  // namespace

std::string_view to_string(LineScope scope) noexcept {
  for (const auto& [value, text] : kScopes) {
    if (value == scope) return text;
  }
  return "whole";
}

std::string_view to_string(Condition condition) noexcept {
  for (const auto& [value, text] : kConditions) {
    if (value == condition) return text;
  }
  return "always";
}

MappingTable MappingTable::defaults() {
  MappingTable t;
  t.languages_[Language::C] = default_c();
  t.languages_[Language::Cpp] = default_cpp();
  t.languages_[Language::Java] = default_java();
  t.languages_[Language::Python] = default_python();
  return t;
}

MappingTable MappingTable::from_json_text(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, std::string("mapping table is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidConfig, "mapping table must be a JSON object");
  auto table = defaults();
  for (const auto& [name, body] : doc.items()) {
    const auto language = parse_language(name);
    if (!language) throw Error(ErrorKind::InvalidConfig, "unknown language '" + name + "' in mapping");
    try {
      table.languages_[*language] = language_from_json(body);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::InvalidConfig, "bad mapping for " + name + ": " + e.what());
    }
  }
  return table;
}

MappingTable MappingTable::load(const std::filesystem::path& path) {
  return from_json_text(read_file(path));
}

std::string MappingTable::to_json_text() const {
  json doc;
  for (const auto& [language, mapping] : languages_) {
    doc[std::string(to_string(language))] = language_to_json(mapping);
  }
  return doc.dump(2) + "\n";
}

const LanguageMapping& MappingTable::for_language(Language language) const {
  const auto it = languages_.find(language);
  if (it == languages_.end()) {
    throw Error(ErrorKind::UnsupportedLanguage,
                "no mapping table for " + std::string(display_name(language)));
  }
  return it->second;
}

LanguageMapping& MappingTable::for_language(Language language) { return languages_[language]; }

}  // namespace confgrade
