#ifndef KALEIDO_JSON_TEXT_HPP
#define KALEIDO_JSON_TEXT_HPP

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace kaleido {

/// Format a double with 17 significant digits (round-trip exact).
inline std::string json_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Minimal streaming JSON writer with deterministic, locale-independent
/// output. All reals go through json_real so emitted documents are
/// byte-stable across runs.
class JsonWriter {
public:
    JsonWriter& begin_object() { open('{'); return *this; }
    JsonWriter& end_object()   { close('}'); return *this; }
    JsonWriter& begin_array()  { open('['); return *this; }
    JsonWriter& end_array()    { close(']'); return *this; }

    JsonWriter& key(const std::string& name) {
        separate();
        out_ += quote(name);
        out_ += ':';
        have_key_ = true;
        return *this;
    }

    JsonWriter& value(double v)      { separate(); out_ += json_real(v); return *this; }
    JsonWriter& value(int v)         { separate(); out_ += std::to_string(v); return *this; }
    JsonWriter& value(long long v)   { separate(); out_ += std::to_string(v); return *this; }
    JsonWriter& value(std::size_t v) { separate(); out_ += std::to_string(v); return *this; }
    JsonWriter& value(bool v)        { separate(); out_ += v ? "true" : "false"; return *this; }
    JsonWriter& value(const char* v) { separate(); out_ += quote(v); return *this; }
    JsonWriter& value(const std::string& v) { separate(); out_ += quote(v); return *this; }

    /// Splice a pre-serialized JSON fragment as one value.
    JsonWriter& raw(const std::string& fragment) {
        separate();
        out_ += fragment;
        return *this;
    }

    const std::string& str() const {
        if (!depth_.empty()) throw std::logic_error("JsonWriter: unclosed container");
        return out_;
    }

private:
    struct Level { char kind; int count; };

    void open(char c) {
        separate();
        out_ += c;
        depth_.push_back({c, 0});
        have_key_ = false;
    }

    void close(char c) {
        if (depth_.empty()) throw std::logic_error("JsonWriter: close without open");
        out_ += (c == '}') ? '}' : ']';
        depth_.pop_back();
        have_key_ = false;
    }

    // Insert a comma before the next item unless it is the first in its
    // container or directly follows its key.
    void separate() {
        if (have_key_) { have_key_ = false; return; }
        if (!depth_.empty()) {
            if (depth_.back().count > 0) out_ += ',';
            depth_.back().count++;
        }
    }

    static std::string quote(const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            switch (c) {
                case '"':  q += "\\\""; break;
                case '\\': q += "\\\\"; break;
                case '\n': q += "\\n"; break;
                case '\t': q += "\\t"; break;
                case '\r': q += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        q += buf;
                    } else {
                        q += c;
                    }
            }
        }
        q += '"';
        return q;
    }

    std::string out_;
    std::vector<Level> depth_;
    bool have_key_ = false;
};

}  // namespace kaleido

#endif  // KALEIDO_JSON_TEXT_HPP
