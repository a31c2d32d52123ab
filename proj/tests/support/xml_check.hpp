#pragma once
// Minimal XML well-formedness checker and attribute scraper for the SVG
// tests. Handles the subset our emitter produces: declarations, balanced
// elements, self-closing tags, double-quoted attributes, text content. Not a
// general XML parser and not meant to be one.

#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace testsupport {

struct XmlTag {
  std::string name;
  std::map<std::string, std::string> attrs;
};

// Returns true and fills `tags` (every opening or self-closing element, in
// document order) when the document is well formed; false otherwise.
inline bool parse_xml(std::string_view doc, std::vector<XmlTag>& tags, std::string& error) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) {
    error = msg + " (offset " + std::to_string(i) + ")";
    return false;
  };
  while (i < doc.size()) {
    if (doc[i] != '<') {
      if (doc[i] == '>') return fail("stray '>'");
      ++i;
      continue;
    }
    ++i;
    if (i < doc.size() && doc[i] == '?') {  // declaration
      const auto end = doc.find("?>", i);
      if (end == std::string_view::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    if (i < doc.size() && doc[i] == '!') {  // comment or doctype
      const auto end = doc.find('>', i);
      if (end == std::string_view::npos) return fail("unterminated '<!'");
      i = end + 1;
      continue;
    }
    const bool closing = i < doc.size() && doc[i] == '/';
    if (closing) ++i;
    std::string name;
    while (i < doc.size() && (std::isalnum(static_cast<unsigned char>(doc[i])) || doc[i] == ':' ||
                              doc[i] == '-' || doc[i] == '_'))
      name += doc[i++];
    if (name.empty()) return fail("tag without a name");
    XmlTag tag;
    tag.name = name;
    bool self_closing = false;
    while (i < doc.size() && doc[i] != '>') {
      if (std::isspace(static_cast<unsigned char>(doc[i]))) {
        ++i;
        continue;
      }
      if (doc[i] == '/') {
        self_closing = true;
        ++i;
        continue;
      }
      if (closing) return fail("attributes on a closing tag");
      std::string key;
      while (i < doc.size() && doc[i] != '=' && doc[i] != '>' &&
             !std::isspace(static_cast<unsigned char>(doc[i])))
        key += doc[i++];
      if (i >= doc.size() || doc[i] != '=') return fail("attribute '" + key + "' without value");
      ++i;
      if (i >= doc.size() || doc[i] != '"') return fail("attribute value must be double-quoted");
      ++i;
      std::string value;
      while (i < doc.size() && doc[i] != '"') value += doc[i++];
      if (i >= doc.size()) return fail("unterminated attribute value");
      ++i;
      tag.attrs[key] = value;
    }
    if (i >= doc.size()) return fail("unterminated tag");
    ++i;  // consume '>'
    if (closing) {
      if (self_closing) return fail("malformed closing tag");
      if (stack.empty()) return fail("closing '" + name + "' with nothing open");
      if (stack.back() != name)
        return fail("closing '" + name + "' but '" + stack.back() + "' is open");
      stack.pop_back();
      continue;
    }
    tags.push_back(std::move(tag));
    if (!self_closing) stack.push_back(name);
  }
  if (!stack.empty()) {
    error = "unclosed element '" + stack.back() + "'";
    return false;
  }
  return true;
}

// Convenience form: throw on malformed input, return the tags. Inside a
// test the exception message carries the parser's complaint.
inline std::vector<XmlTag> parse_xml(std::string_view doc) {
  std::vector<XmlTag> tags;
  std::string error;
  if (!parse_xml(doc, tags, error)) throw std::runtime_error("XML not well formed: " + error);
  return tags;
}

inline bool has_class_token(const XmlTag& tag, const std::string& token) {
  auto it = tag.attrs.find("class");
  if (it == tag.attrs.end()) return false;
  std::string_view rest = it->second;
  while (!rest.empty()) {
    const auto space = rest.find(' ');
    const std::string_view word = rest.substr(0, space);
    if (word == token) return true;
    if (space == std::string_view::npos) break;
    rest.remove_prefix(space + 1);
  }
  return false;
}

// Count elements by name, optionally restricted to those carrying `cls` as
// a class token ("link" matches class="link sf7").
inline std::size_t count_tags(const std::vector<XmlTag>& tags, const std::string& name,
                              const std::string& cls = "") {
  std::size_t count = 0;
  for (const auto& tag : tags) {
    if (tag.name != name) continue;
    if (!cls.empty() && !has_class_token(tag, cls)) continue;
    ++count;
  }
  return count;
}

}  // namespace testsupport
