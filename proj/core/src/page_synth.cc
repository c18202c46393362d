// Copyright 2026 The Erratum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "erratum/page_synth.h"

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "erratum/random.h"

namespace erratum {
namespace {

constexpr std::array<std::string_view, 64> kWords = {
    "about",    "account",  "archive", "blog",     "careers",  "cart",
    "catalog",  "contact",  "cloud",   "company",  "data",     "design",
    "docs",     "events",   "explore", "faq",      "features", "forum",
    "gallery",  "guides",   "help",    "home",     "insights", "jobs",
    "learn",    "legal",    "library", "login",    "market",   "media",
    "members",  "news",     "offers",  "partners", "photos",   "plans",
    "pricing",  "privacy",  "products", "projects", "press",   "radio",
    "reviews",  "search",   "security", "services", "settings", "shop",
    "signup",   "sports",   "store",   "stories",  "support",  "team",
    "terms",    "travel",   "updates", "video",    "weather",  "world",
    "wiki",     "tools",    "status",  "community"};

enum class Style { kBem, kUtility, kHashed };

class Writer {
 public:
  Writer(std::uint64_t seed) : rng_(seed) {
    style_ = static_cast<Style>(uniform_index(rng_, 3));
    for (int i = 0; i < 4; ++i) prefix_ += static_cast<char>('a' + pick(26));
    layout_depth_ = 1 + static_cast<int>(pick(4));
    data_ids_ = chance(0.5);
    tracking_ = chance(0.5);
    carousel_clones_ = chance(0.4);
  }

  // Site-wide habits.
  int layout_depth() const { return layout_depth_; }
  bool data_ids() const { return data_ids_; }
  bool tracking() const { return tracking_; }
  bool carousel_clones() const { return carousel_clones_; }

  std::size_t pick(std::size_t n) { return uniform_index(rng_, n); }
  bool chance(double p) { return uniform01(rng_) < p; }
  std::string_view word() { return kWords[pick(kWords.size())]; }
  std::string title_words(int n) {
    std::string s;
    for (int i = 0; i < n; ++i) {
      if (i) s += ' ';
      std::string w(word());
      if (i == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
      s += w;
    }
    return s;
  }
  std::string slug() {
    return std::string(word()) + "-" + std::string(word()) + "-" +
           std::to_string(pick(1000));
  }

  // Class name for a component part in this site's naming style.
  std::string cls(std::string_view block, std::string_view elem = {}) {
    switch (style_) {
      case Style::kBem:
        return elem.empty() ? std::string(block)
                            : std::string(block) + "__" + std::string(elem);
      case Style::kUtility:
        return elem.empty() ? std::string(block)
                            : std::string(block) + "-" + std::string(elem);
      case Style::kHashed: {
        std::uint64_t h = splitmix64(std::hash<std::string_view>{}(block) ^
                                     std::hash<std::string_view>{}(elem) ^
                                     splitmix64(prefix_[0]));
        std::string out = prefix_ + "-";
        for (int i = 0; i < 6; ++i) {
          out += "abcdefghijklmnopqrstuvwxyz0123456789"[h % 36];
          h /= 36;
        }
        return out;
      }
    }
    return std::string(block);
  }
  // Optional utility classes appended to a base class.
  std::string util(std::string base) {
    static constexpr std::array<std::string_view, 12> kUtil = {
        "mt-2",   "mb-3",        "px-4",    "text-center", "d-flex",
        "row",    "col-md-4",    "col-6",   "clearfix",    "hidden-xs",
        "active", "is-featured"};
    if (style_ != Style::kHashed && chance(0.35)) {
      base += ' ';
      base += kUtil[pick(kUtil.size())];
    }
    return base;
  }

  void open(std::string_view tag, std::string attrs = {}) {
    out_ += '<';
    out_ += tag;
    if (!attrs.empty()) {
      out_ += ' ';
      out_ += attrs;
    }
    out_ += '>';
    ++count_;
  }
  void close(std::string_view tag) {
    out_ += "</";
    out_ += tag;
    out_ += ">\n";
  }
  void leaf(std::string_view tag, std::string attrs, std::string_view text) {
    open(tag, std::move(attrs));
    out_ += text;
    close(tag);
  }
  void void_el(std::string_view tag, std::string attrs) {
    open(tag, std::move(attrs));
    out_ += '\n';
  }
  void text(std::string_view t) { out_ += t; }

  int count() const { return count_; }
  std::string take() { return std::move(out_); }
  Rng& rng() { return rng_; }

 private:
  Rng rng_;
  Style style_;
  int layout_depth_ = 1;
  bool data_ids_ = false;
  bool tracking_ = false;
  bool carousel_clones_ = false;
  std::string prefix_;
  std::string out_;
  int count_ = 0;
};

std::string attr(std::string_view name, std::string_view value) {
  std::string s(name);
  s += "=\"";
  s += value;
  s += '"';
  return s;
}

std::string join(std::initializer_list<std::string> parts) {
  std::string s;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!s.empty()) s += ' ';
    s += p;
  }
  return s;
}

// Shared by all links of a component when the site uses analytics hooks.
std::string track(Writer& w, std::string_view component) {
  return w.tracking() ? attr("data-track", component) : std::string();
}

void link(Writer& w, std::string_view cls, std::string href, std::string text,
          std::string extra = {}) {
  w.leaf("a",
         join({cls.empty() ? "" : attr("class", cls), attr("href", href),
               std::move(extra)}),
         text);
}

void icon(Writer& w, std::string_view name) {
  w.open("svg", join({attr("class", "icon icon-" + std::string(name)),
                      attr("aria-hidden", "true")}));
  w.leaf("use", attr("href", "#i-" + std::string(name)), "");
  w.close("svg");
}

// Layout containers around a component: container, row, column, inner.
int open_layout(Writer& w) {
  static constexpr std::array<std::string_view, 4> kLevels = {
      "container", "row", "col", "inner"};
  int depth = w.layout_depth();
  for (int i = 0; i < depth; ++i) {
    std::string cls = w.cls(kLevels[i]);
    if (i == 2) cls += w.chance(0.5) ? " col-12" : " col-md-8";
    w.open("div", attr("class", cls));
  }
  return depth;
}

void close_layout(Writer& w, int depth) {
  for (int i = 0; i < depth; ++i) w.close("div");
}

void nav_links(Writer& w, const std::vector<std::string>& words,
               std::string_view block, bool dropdowns) {
  w.open("ul", attr("class", w.cls(block)));
  for (const auto& word : words) {
    w.open("li", attr("class", w.cls(block, "item")));
    link(w, w.cls(block, "link"), "/" + word,
         std::string(1, static_cast<char>(word[0] - 'a' + 'A')) + word.substr(1),
         track(w, block));
    if (dropdowns && w.chance(0.4)) {
      w.open("button", join({attr("class", w.cls(block, "toggle")),
                             attr("type", "button"),
                             attr("aria-expanded", "false")}));
      icon(w, "chevron");
      w.close("button");
      w.open("ul", attr("class", w.cls("submenu")));
      int n = 2 + static_cast<int>(w.pick(5));
      for (int i = 0; i < n; ++i) {
        w.open("li");
        link(w, w.cls("submenu", "link"),
             "/" + word + "/" + std::string(w.word()), w.title_words(2),
             track(w, "submenu"));
        w.close("li");
      }
      w.close("ul");
    }
    w.close("li");
  }
  w.close("ul");
}

void header(Writer& w) {
  w.open("header", join({attr("class", w.cls("site-header")),
                         attr("id", "top")}));
  if (w.chance(0.5)) {
    w.open("div", attr("class", w.cls("topbar")));
    w.open("ul", attr("class", w.cls("topbar", "links")));
    for (std::string_view t : {"Help", "Stores", "Sign in"}) {
      w.open("li");
      link(w, w.cls("topbar", "link"), "/" + w.slug(), std::string(t));
      w.close("li");
    }
    w.close("ul");
    w.close("div");
  }
  int depth = open_layout(w);
  w.open("a", join({attr("class", w.cls("logo")), attr("href", "/")}));
  w.void_el("img", join({attr("src", "/static/logo.svg"), attr("alt", "Logo")}));
  w.close("a");

  std::vector<std::string> words;
  int items = 4 + static_cast<int>(w.pick(6));
  for (int i = 0; i < items; ++i) words.emplace_back(w.word());
  w.open("nav", join({attr("class", w.cls("main-nav")),
                      attr("aria-label", "Main")}));
  nav_links(w, words, "nav", true);
  w.close("nav");

  if (w.chance(0.7)) {
    w.open("form", join({attr("class", w.cls("search")),
                         attr("action", "/search"), attr("method", "get"),
                         attr("role", "search")}));
    w.void_el("input", join({attr("type", "text"), attr("name", "q"),
                             attr("placeholder", "Search"),
                             attr("class", w.cls("search", "input"))}));
    w.open("button", join({attr("type", "submit"),
                           attr("class", w.cls("btn", "search"))}));
    icon(w, "search");
    w.close("button");
    w.close("form");
  }
  w.open("div", attr("class", w.cls("header", "actions")));
  for (std::string_view a : {"account", "wishlist", "cart"}) {
    if (a != "cart" && w.chance(0.4)) continue;
    w.open("a", join({attr("class", w.cls("icon-btn")), attr("href", "/" + std::string(a)),
                      attr("aria-label", a)}));
    icon(w, a);
    w.close("a");
  }
  w.close("div");
  const bool mobile = w.chance(0.6);
  if (mobile || w.chance(0.5)) {
    w.open("button", join({attr("class", w.cls("menu-toggle")),
                           attr("type", "button"),
                           attr("onclick", "toggleMenu()")}));
    icon(w, "menu");
    w.close("button");
  }
  close_layout(w, depth);
  if (mobile) {
    // Small-screen copy of the main navigation.
    w.open("div", join({attr("class", w.cls("mobile-menu")),
                        attr("id", "mobile-menu"), attr("hidden", "")}));
    nav_links(w, words, "mobile-nav", false);
    w.close("div");
  }
  w.close("header");
}

void hero(Writer& w) {
  w.open("section", attr("class", w.util(w.cls("hero"))));
  int depth = open_layout(w);
  w.leaf("h1", attr("class", w.cls("hero", "title")), w.title_words(4));
  w.leaf("p", attr("class", w.cls("hero", "lead")), w.title_words(9));
  link(w, w.util(w.cls("btn", "primary")), "/" + w.slug(), "Get started");
  if (w.chance(0.5)) {
    link(w, w.cls("btn", "secondary"), "/" + std::string(w.word()),
         "Learn more");
  }
  close_layout(w, depth);
  w.close("section");
}

void slide(Writer& w, const std::string& title, const std::string& href,
           bool clone) {
  w.open("div", join({attr("class", w.cls("slide") +
                                        (clone ? " slick-cloned" : "")),
                      clone ? attr("aria-hidden", "true") : ""}));
  w.void_el("img", join({attr("class", w.cls("slide", "img")),
                         attr("src", "/img/banner-" + href.substr(1) + ".jpg"),
                         attr("alt", "")}));
  w.open("div", attr("class", w.cls("slide", "content")));
  w.leaf("h2", attr("class", w.cls("slide", "title")), title);
  link(w, w.cls("btn", "primary"), href, "Shop now");
  w.close("div");
  w.close("div");
}

void carousel(Writer& w) {
  w.open("section", join({attr("class", w.cls("carousel")),
                          attr("aria-roledescription", "carousel")}));
  int n = 2 + static_cast<int>(w.pick(4));
  std::vector<std::pair<std::string, std::string>> slides;
  for (int i = 0; i < n; ++i) {
    slides.emplace_back(w.title_words(3), "/" + w.slug());
  }
  w.open("div", attr("class", w.cls("carousel", "track")));
  if (w.carousel_clones()) slide(w, slides.back().first, slides.back().second, true);
  for (const auto& [t, h] : slides) slide(w, t, h, false);
  if (w.carousel_clones()) slide(w, slides.front().first, slides.front().second, true);
  w.close("div");
  for (std::string_view dir : {"prev", "next"}) {
    w.open("button", join({attr("class", w.cls("carousel", dir)),
                           attr("type", "button"),
                           attr("aria-label", dir == "prev" ? "Previous" : "Next")}));
    icon(w, dir == "prev" ? "arrow-left" : "arrow-right");
    w.close("button");
  }
  w.open("div", attr("class", w.cls("carousel", "dots")));
  for (int i = 0; i < n; ++i) {
    w.leaf("button", join({attr("class", w.cls("dot")), attr("type", "button"),
                           attr("aria-label", "Slide " + std::to_string(i + 1))}),
           "");
  }
  w.close("div");
  w.close("section");
}

void products(Writer& w) {
  w.open("section", attr("class", w.cls("products")));
  int depth = open_layout(w);
  w.leaf("h2", attr("class", w.cls("section", "title")), w.title_words(2));
  w.open("div", attr("class", w.util(w.cls("product-grid"))));
  int n = 4 + static_cast<int>(w.pick(9));
  for (int i = 0; i < n; ++i) {
    std::string slug = w.slug();
    std::string id = std::to_string(10000 + w.pick(90000));
    w.open("div", join({attr("class", w.cls("product")),
                        w.data_ids() ? attr("data-product-id", id) : ""}));
    w.open("a", join({attr("class", w.cls("product", "image")),
                      attr("href", "/p/" + slug)}));
    w.void_el("img", join({attr("src", "/img/products/" + id + ".jpg"),
                           attr("alt", w.title_words(2)),
                           attr("loading", "lazy")}));
    w.close("a");
    w.open("div", attr("class", w.cls("product", "info")));
    w.open("h3", attr("class", w.cls("product", "name")));
    link(w, "", "/p/" + slug, w.title_words(3));
    w.close("h3");
    w.leaf("span", attr("class", w.cls("price")),
           "$" + std::to_string(5 + w.pick(200)) + ".99");
    w.close("div");
    w.open("div", attr("class", w.cls("product", "actions")));
    w.leaf("button", join({attr("class", w.cls("btn", "cart")),
                           attr("type", "button"),
                           w.data_ids() ? attr("data-product-id", id) : ""}),
           "Add to cart");
    if (w.chance(0.5)) {
      w.open("button", join({attr("class", w.cls("wishlist")),
                             attr("type", "button"),
                             attr("aria-label", "Add to wishlist")}));
      icon(w, "heart");
      w.close("button");
    }
    w.close("div");
    w.close("div");
  }
  w.close("div");
  close_layout(w, depth);
  w.close("section");
}

void cards(Writer& w) {
  w.open("section", attr("class", w.cls("features")));
  int depth = open_layout(w);
  w.leaf("h2", attr("class", w.cls("section", "title")), w.title_words(3));
  w.open("div", attr("class", w.util(w.cls("grid"))));
  int n = 3 + static_cast<int>(w.pick(7));
  for (int i = 0; i < n; ++i) {
    w.open("div", attr("class", w.util(w.cls("card"))));
    std::string slug = w.slug();
    if (w.chance(0.7)) {
      w.void_el("img", join({attr("class", w.cls("card", "img")),
                             attr("src", "/img/" + slug + ".jpg"),
                             attr("alt", "")}));
    }
    w.open("div", attr("class", w.cls("card", "body")));
    w.open("h3", attr("class", w.cls("card", "title")));
    link(w, "", "/" + slug, w.title_words(3));
    w.close("h3");
    w.leaf("p", attr("class", w.cls("card", "text")), w.title_words(12));
    if (w.chance(0.6)) {
      link(w, w.cls("card", "link"), "/" + slug, "Read more");
    }
    w.close("div");
    w.close("div");
  }
  w.close("div");
  close_layout(w, depth);
  w.close("section");
}

void articles(Writer& w) {
  w.open("section", attr("class", w.cls("latest")));
  int depth = open_layout(w);
  w.leaf("h2", "", w.title_words(2));
  w.open("ul", attr("class", w.cls("articles")));
  int n = 4 + static_cast<int>(w.pick(10));
  const bool share = w.chance(0.5);
  for (int i = 0; i < n; ++i) {
    w.open("li", attr("class", w.cls("article")));
    std::string slug = w.slug();
    w.open("a", join({attr("class", w.cls("article", "link")),
                      attr("href", "/blog/" + slug)}));
    w.leaf("span", attr("class", w.cls("article", "title")), w.title_words(5));
    w.close("a");
    w.leaf("span", attr("class", w.cls("article", "date")),
           std::to_string(1 + w.pick(28)) + " May 2019");
    if (w.chance(0.5)) w.leaf("p", "", w.title_words(14));
    if (w.chance(0.3)) {
      link(w, w.cls("tag"), "/tag/" + std::string(w.word()), w.title_words(1));
    }
    if (share) {
      w.open("div", attr("class", w.cls("share")));
      for (std::string_view net : {"twitter", "facebook"}) {
        w.open("a", join({attr("class", w.cls("share", net)),
                          attr("href", "https://" + std::string(net) +
                                           ".com/share?u=/blog/" + slug),
                          attr("target", "_blank"), attr("rel", "noopener")}));
        icon(w, net);
        w.close("a");
      }
      w.close("div");
    }
    w.close("li");
  }
  w.close("ul");
  close_layout(w, depth);
  w.close("section");
}

void table(Writer& w) {
  w.open("div", attr("class", w.cls("table-wrap")));
  w.open("table", attr("class", w.cls("table")));
  int cols = 3 + static_cast<int>(w.pick(3));
  w.open("thead");
  w.open("tr");
  for (int c = 0; c < cols; ++c) w.leaf("th", "", w.title_words(1));
  w.close("tr");
  w.close("thead");
  w.open("tbody");
  int rows = 3 + static_cast<int>(w.pick(8));
  for (int r = 0; r < rows; ++r) {
    w.open("tr");
    for (int c = 0; c < cols; ++c) {
      w.open("td");
      if (c == 0) {
        link(w, "", "/item/" + std::to_string(w.pick(10000)),
             w.title_words(2));
      } else if (c == cols - 1 && w.chance(0.4)) {
        w.leaf("button", join({attr("class", w.cls("btn", "small")),
                               attr("type", "button")}),
               "Details");
      } else {
        w.text(std::to_string(w.pick(1000)));
      }
      w.close("td");
    }
    w.close("tr");
  }
  w.close("tbody");
  w.close("table");
  w.close("div");
}

void form(Writer& w) {
  w.open("form", join({attr("class", w.cls("contact-form")),
                       attr("method", "post"), attr("action", "/contact")}));
  int fields = 2 + static_cast<int>(w.pick(4));
  for (int i = 0; i < fields; ++i) {
    std::string name(w.word());
    w.open("div", attr("class", w.cls("form-group")));
    w.leaf("label", attr("for", "f-" + name), w.title_words(1));
    w.void_el("input", join({attr("type", i == 1 ? "email" : "text"),
                             attr("id", "f-" + name), attr("name", name),
                             attr("class", w.cls("input"))}));
    w.close("div");
  }
  if (w.chance(0.5)) {
    w.open("div", attr("class", w.cls("form-check")));
    w.void_el("input", join({attr("type", "checkbox"), attr("name", "agree")}));
    w.leaf("span", "", "I agree");
    w.close("div");
  }
  w.void_el("input", join({attr("type", "submit"), attr("value", "Send"),
                           attr("class", w.cls("btn", "primary"))}));
  w.close("form");
}

void newsletter(Writer& w) {
  w.open("section", attr("class", w.cls("newsletter")));
  int depth = open_layout(w);
  w.leaf("h3", attr("class", w.cls("newsletter", "title")), w.title_words(3));
  w.open("form", join({attr("class", w.cls("newsletter", "form")),
                       attr("action", "/subscribe"), attr("method", "post")}));
  w.void_el("input", join({attr("type", "email"), attr("name", "email"),
                           attr("placeholder", "Your email"),
                           attr("required", "")}));
  w.leaf("button", join({attr("type", "submit"),
                         attr("class", w.cls("btn", "primary"))}),
         "Subscribe");
  w.close("form");
  close_layout(w, depth);
  w.close("section");
}

void sidebar(Writer& w) {
  w.open("aside", attr("class", w.cls("sidebar")));
  int widgets = 1 + static_cast<int>(w.pick(3));
  for (int i = 0; i < widgets; ++i) {
    w.open("div", attr("class", w.cls("widget")));
    w.leaf("h4", attr("class", w.cls("widget", "title")), w.title_words(2));
    w.open("ul");
    int n = 3 + static_cast<int>(w.pick(6));
    for (int j = 0; j < n; ++j) {
      w.open("li");
      link(w, "", "/" + std::string(w.word()) + "/" + std::to_string(j),
           w.title_words(2));
      w.close("li");
    }
    w.close("ul");
    w.close("div");
  }
  w.close("aside");
}

void pagination(Writer& w) {
  w.open("nav", join({attr("class", w.cls("pagination")),
                      attr("aria-label", "Pages")}));
  w.open("ul");
  int pages = 3 + static_cast<int>(w.pick(6));
  for (int i = 1; i <= pages; ++i) {
    w.open("li", i == 1 ? attr("class", "active") : "");
    link(w, "", "?page=" + std::to_string(i), std::to_string(i));
    w.close("li");
  }
  w.open("li");
  link(w, w.cls("next"), "?page=2", "Next");
  w.close("li");
  w.close("ul");
  w.close("nav");
}

void media(Writer& w) {
  w.open("div", attr("class", w.cls("media")));
  int n = 2 + static_cast<int>(w.pick(5));
  for (int i = 0; i < n; ++i) {
    w.open("figure", attr("class", w.cls("media", "item")));
    w.open("a", attr("href", "/photos/" + w.slug()));
    w.void_el("img", join({attr("src", "/img/p" + std::to_string(w.pick(999)) +
                                           ".jpg"),
                           attr("alt", w.title_words(2))}));
    w.close("a");
    w.leaf("figcaption", "", w.title_words(4));
    w.close("figure");
  }
  w.close("div");
}

void text_block(Writer& w) {
  w.open("article", attr("class", w.cls("content")));
  w.leaf("h2", "", w.title_words(4));
  int paras = 2 + static_cast<int>(w.pick(4));
  for (int i = 0; i < paras; ++i) {
    w.open("p");
    w.text(w.title_words(10) + " ");
    if (w.chance(0.5)) {
      link(w, "", "/" + w.slug(), w.title_words(2));
      w.text(" " + w.title_words(6));
    }
    if (w.chance(0.3)) w.leaf("strong", "", w.title_words(2));
    w.close("p");
  }
  if (w.chance(0.4)) {
    w.open("ul");
    for (int i = 0; i < 3; ++i) w.leaf("li", "", w.title_words(5));
    w.close("ul");
  }
  w.close("article");
}

void footer(Writer& w) {
  w.open("footer", attr("class", w.cls("site-footer")));
  int depth = open_layout(w);
  w.open("div", attr("class", w.util(w.cls("footer", "columns"))));
  int cols = 2 + static_cast<int>(w.pick(3));
  for (int c = 0; c < cols; ++c) {
    w.open("div", attr("class", w.cls("footer", "col")));
    w.leaf("h5", "", w.title_words(1));
    w.open("ul");
    int n = 3 + static_cast<int>(w.pick(5));
    for (int i = 0; i < n; ++i) {
      std::string word(w.word());
      w.open("li");
      link(w, "", "/" + word, w.title_words(1), track(w, "footer"));
      w.close("li");
    }
    w.close("ul");
    w.close("div");
  }
  w.close("div");
  w.open("div", attr("class", w.cls("footer", "bottom")));
  w.leaf("p", attr("class", w.cls("copyright")), "Copyright 2019");
  w.open("ul", attr("class", w.cls("social")));
  for (std::string_view net : {"twitter", "facebook", "youtube", "instagram"}) {
    w.open("li");
    w.open("a", join({attr("href", "https://" + std::string(net) + ".com/x"),
                      attr("aria-label", net), attr("target", "_blank")}));
    w.leaf("i", attr("class", "icon icon-" + std::string(net)), "");
    w.close("a");
    w.close("li");
  }
  w.close("ul");
  w.close("div");
  close_layout(w, depth);
  w.close("footer");
}

}  // namespace

std::string synthesize_page(std::uint64_t seed, const PageSynthConfig& config) {
  Writer w(splitmix64(seed));
  std::string title = w.title_words(3);
  w.text("<!DOCTYPE html>\n");
  w.open("html", attr("lang", "en"));
  w.open("head");
  w.void_el("meta", attr("charset", "utf-8"));
  w.void_el("meta", join({attr("name", "viewport"),
                          attr("content", "width=device-width")}));
  w.leaf("title", "", title);
  w.void_el("link", join({attr("rel", "stylesheet"),
                          attr("href", "/static/site.css")}));
  w.text("<script>window.dataLayer = [];</script>\n");
  w.close("head");
  w.open("body", attr("class", w.cls("page")));
  header(w);
  w.open("main", join({attr("id", "main"), attr("class", w.cls("main"))}));
  if (w.chance(0.5)) {
    carousel(w);
  } else {
    hero(w);
  }

  using Section = void (*)(Writer&);
  static constexpr std::array<Section, 10> kSections = {
      cards, articles, products, table, form, media, text_block, sidebar,
      newsletter, pagination};
  // Sections that appear at most once per page.
  auto single = [](Section s) {
    return s == form || s == newsletter || s == pagination;
  };
  std::vector<bool> used(kSections.size(), false);
  const int budget = std::max(80, config.target_nodes) - 80;  // footer
  while (w.count() < budget) {
    std::size_t i = w.pick(kSections.size());
    if (used[i] && single(kSections[i])) continue;
    used[i] = true;
    if (w.chance(0.25)) {
      w.open("div", attr("class", w.util(w.cls("row"))));
      kSections[i](w);
      w.close("div");
    } else {
      kSections[i](w);
    }
  }
  w.close("main");
  footer(w);
  w.text("<!-- generated -->\n");
  w.close("body");
  w.close("html");
  return w.take();
}

}  // namespace erratum
