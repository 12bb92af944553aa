#include <dlfcn.h>

#include "tribo/framework.hpp"

namespace tribo {

std::string_view toString(InterfaceId id) noexcept { return Registry::interfaceName(id); }

void loadPluginLibrary(Registry& registry, const std::filesystem::path& library) {
  void* handle = ::dlopen(library.c_str(), RTLD_NOW | RTLD_LOCAL);
  if (handle == nullptr) {
    const char* why = ::dlerror();
    throw Error(ErrorKind::Registration,
                "cannot load plug-in " + library.string() + ": " + (why ? why : "unknown error"));
  }
  void* symbol = ::dlsym(handle, kPluginEntryPoint);
  if (symbol == nullptr) {
    ::dlclose(handle);
    throw Error(ErrorKind::Registration,
                library.string() + " does not export " + std::string(kPluginEntryPoint));
  }
  auto entry = reinterpret_cast<PluginEntryFn>(symbol);
  entry(&registry);
}

}  // namespace tribo
