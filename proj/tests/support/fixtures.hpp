#ifndef CONSLAW_TESTS_FIXTURES_HPP
#define CONSLAW_TESTS_FIXTURES_HPP

#include <conslaw/document.hpp>
#include <conslaw/syntax.hpp>

namespace fixtures
{

using namespace conslaw;

inline const system_document &doc(const std::string &name)
{
    static const system_document gkdv = resolve_document("gkdv");
    static const system_document kg = resolve_document("kg-phi-n");
    static const system_document kgv = resolve_document("kg-potential");
    static const system_document kgw = resolve_document("kg-w");
    static const system_document triv = resolve_document("trivial-ext");
    static const system_document wave = resolve_document("linear-wave");
    if (name == "gkdv") {
        return gkdv;
    }
    if (name == "kg-phi-n") {
        return kg;
    }
    if (name == "kg-potential") {
        return kgv;
    }
    if (name == "kg-w") {
        return kgw;
    }
    if (name == "trivial-ext") {
        return triv;
    }
    return wave;
}

inline const de_system &gkdv()
{
    return doc("gkdv").system;
}

inline const signature &gsig()
{
    return gkdv().sig;
}

inline expr G(const std::string &text)
{
    return parse(gsig(), text);
}

inline current GJ(const std::string &a, const std::string &b)
{
    return {G(a), G(b)};
}

inline expr K(const std::string &text)
{
    return parse(doc("kg-phi-n").system.sig, text);
}

} // namespace fixtures

#endif
