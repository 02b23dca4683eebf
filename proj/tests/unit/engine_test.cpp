#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "generators.hpp"
#include "proofdeck/codec.hpp"
#include "proofdeck/engine.hpp"
#include "proofdeck/server.hpp"

namespace proofdeck {
namespace {

std::vector<Answer> run(Engine& e, const Command& c) {
  std::vector<Answer> out;
  e.handle(c, [&](const Answer& a) { out.push_back(a); });
  return out;
}

TEST(Engine, ObserveBeforeInit) {
  Engine e;
  const auto out = run(e, cmd::Observe{StateId{1}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0], Answer{(ans::CoqExn{std::nullopt, std::nullopt, "engine not initialized"})});
}

TEST(Engine, SessionOrder) {
  Engine e;
  EXPECT_EQ(run(e, cmd::Init{}), std::vector<Answer>{ans::Observed{kInitialState}});
  EXPECT_EQ(run(e, cmd::Add{kInitialState, 1, "Lemma t : True."}), std::vector<Answer>{ans::Added{StateId{2}}});
  EXPECT_EQ(run(e, cmd::Add{StateId{2}, 2, "exact I."}), std::vector<Answer>{ans::Added{StateId{3}}});
  const std::vector<Answer> expected{
      ans::FeedbackMsg{{StateId{2}, feedback::ProcessingStarted{}}},
      ans::FeedbackMsg{{StateId{2}, feedback::Processed{}}},
      ans::FeedbackMsg{{StateId{3}, feedback::ProcessingStarted{}}},
      ans::FeedbackMsg{{StateId{3}, feedback::Processed{}}},
      ans::Observed{StateId{3}},
  };
  EXPECT_EQ(run(e, cmd::Observe{StateId{3}}), expected);
  EXPECT_EQ(run(e, cmd::Goals{StateId{3}}), std::vector<Answer>{(ans::GoalInfo{StateId{3}, "", 0})});
  EXPECT_EQ(run(e, cmd::Cancel{StateId{3}}), std::vector<Answer>{ans::Cancelled{{StateId{3}}}});
}

TEST(Engine, Options) {
  Engine e;
  run(e, cmd::Init{});
  EXPECT_EQ(run(e, cmd::GetOpt{kPrintingCompact}), std::vector<Answer>{ans::CoqOpt{false}});
  EXPECT_EQ(run(e, (cmd::SetOpt{true, kPrintingCompact, true})), std::vector<Answer>{ans::CoqOpt{true}});
  const auto bad = run(e, cmd::SetOpt{std::nullopt, {"Nope"}, true});
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_TRUE(std::holds_alternative<ans::CoqExn>(bad[0]));
}

TEST(Engine, InfoPkg) {
  Engine e;
  const auto base = (fixtures::dir() / "manifests").string();
  const auto out = run(e, cmd::InfoPkg{base, {"math-comp", "nope"}});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], Answer{(ans::LibInfo{"math-comp", {"math-comp", {}, {}}})});
  ASSERT_TRUE(std::holds_alternative<ans::CoqExn>(out[1]));
  EXPECT_EQ(std::get<ans::CoqExn>(out[1]).message.rfind("nope: ", 0), 0u);
  EXPECT_TRUE(run(e, cmd::InfoPkg{base, {}}).empty());
}

TEST(Engine, LoadPkgThenInitImports) {
  fixtures::TempDir tmp("engine");
  pkg::build_tree(fixtures::dir() / "pkgsrc", tmp.path());
  Engine e;
  const auto loaded = run(e, cmd::LoadPkg{tmp.path().string(), "logic-more"});
  ASSERT_EQ(loaded.size(), 8u);
  EXPECT_EQ(loaded.back(), Answer{ans::LibLoaded{"logic-more"}});
  run(e, cmd::Init{{{"Lib"}, {"More"}}, {{"More", "Chain"}}});
  run(e, cmd::Add{kInitialState, 0, "Check chain."});
  const auto out = run(e, cmd::Observe{StateId{2}});
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[1], Answer{(ans::FeedbackMsg{{StateId{2}, feedback::Message{Level::Info, "chain : (A -> B) -> (B -> C) -> A -> C"}}})});

  const auto cyc = run(e, cmd::LoadPkg{(fixtures::dir() / "pkgcycle").string(), "A"});
  ASSERT_EQ(cyc.size(), 1u);
  EXPECT_EQ(cyc[0], Answer{(ans::CoqExn{std::nullopt, std::nullopt, "A: dependency cycle: A, B"})});
}

TEST(Engine, GetInfo) {
  Engine e;
  const auto out = run(e, cmd::GetInfo{});
  ASSERT_EQ(out.size(), 1u);
  const auto& fb = std::get<ans::FeedbackMsg>(out[0]).feedback;
  EXPECT_EQ(fb.id, StateId{0});
  EXPECT_EQ(std::get<feedback::Message>(fb.contents).text.rfind("proofdeck 0.1.0", 0), 0u);
}

TEST(Engine, GarbageLeavesStateUntouched) {
  gen::Rng rng(17);
  Engine clean, dirty;
  const std::vector<std::string> session{
      R"(["Init",[],[]])", R"(["Add",1,0,"Lemma t : A -> A."])", R"(["Add",2,0,"intro h."])",
      R"(["Observe",3])",  R"(["Goals",3])",                    R"(["Add",3,0,"exact h."])",
      R"(["Add",4,0,"Qed."])", R"(["Observe",5])",              R"(["Cancel",4])",
      R"(["Goals",3])",
  };
  for (const auto& msg : session) {
    for (int k = gen::uniform(rng, 0, 3); k > 0; --k) {
      std::string junk = msg.substr(0, static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(msg.size()) - 1)));
      junk += "}{";
      const auto out = dirty.handle_json(junk);
      ASSERT_EQ(out.size(), 1u);
      ASSERT_EQ(out[0].rfind("[\"JsonExn\"", 0), 0u) << out[0];
    }
    ASSERT_EQ(dirty.handle_json(msg), clean.handle_json(msg)) << msg;
  }
}

TEST(Server, StdioFraming) {
  std::istringstream in("[\"Init\",[],[]]\r\n\n  \nnot json\n[\"Add\",1,0,\"Check x.\"]\n[\"GetOpt\",[\"Silent\"]]");
  std::ostringstream out, log;
  Engine e;
  StreamChannel ch(in, out);
  serve(ch, e, &log);
  std::vector<std::string> lines;
  std::istringstream rd(out.str());
  for (std::string l; std::getline(rd, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "[\"Observed\",1]");
  EXPECT_EQ(lines[1].rfind("[\"JsonExn\",\"malformed JSON: ", 0), 0u);
  EXPECT_EQ(lines[2], "[\"Added\",2]");
  EXPECT_EQ(lines[3], "[\"CoqOpt\",[\"Bool\",false]]");
  EXPECT_EQ(out.str().back(), '\n');
  EXPECT_EQ(log.str().substr(0, 17), "> [\"Init\",[],[]]\n");
  EXPECT_NE(log.str().find("< [\"Added\",2]\n"), std::string::npos);
}

TEST(Server, SocketSession) {
  const int port = 20000 + static_cast<int>(::getpid() % 20000);
  std::string server_error;
  std::thread server([&] {
    try {
      listen_and_serve("127.0.0.1:" + std::to_string(port), {}, nullptr, 1);
    } catch (const std::exception& e) {
      server_error = e.what();
    }
  });

  int fd = -1;
  for (int attempt = 0; attempt < 200 && fd < 0; ++attempt) {
    fd = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
      ::close(fd);
      fd = -1;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  if (fd < 0) {
    server.detach();
    FAIL() << "could not connect: " << server_error;
  }
  {
    SocketChannel client(fd);
    client.send(R"(["Init",[],[]])");
    EXPECT_EQ(client.receive(), std::optional<std::string>(R"(["Observed",1])"));
    client.send("garbage");
    EXPECT_EQ(client.receive()->rfind("[\"JsonExn\"", 0), 0u);
    client.send(R"(["Add",1,0,"Lemma t : True."])");
    EXPECT_EQ(client.receive(), std::optional<std::string>(R"(["Added",2])"));
  }  // closing the socket ends the session
  server.join();
  EXPECT_EQ(server_error, "");
}

}  // namespace
}  // namespace proofdeck
