#include "playground/session.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "playground/protocol.hpp"

namespace playground {
namespace {

TEST(SessionTest, FreshFrame) {
  Session s("#");
  const Frame f = s.frame();
  EXPECT_EQ(f.epoch, 0);
  EXPECT_FALSE(f.running);
  EXPECT_EQ(f.state, encode(Config{}));
  EXPECT_EQ(f.weights.size(), 18u);
  EXPECT_EQ(f.biases.size(), 7u);
  EXPECT_TRUE(f.loss.empty());
  EXPECT_TRUE(f.heatmaps.empty());
  EXPECT_EQ(f.data.size(), 500u);
  int train = 0;
  for (const auto& p : f.data) train += p.is_train;
  EXPECT_EQ(train, 250);
}

TEST(SessionTest, StepRunsOneEpoch) {
  Session s("#");
  const Frame f = s.handle(command::Step{});
  EXPECT_EQ(f.epoch, 1);
  EXPECT_EQ(f.loss.size(), 1u);
}

TEST(SessionTest, PlayPauseAndTick) {
  Session s("#");
  EXPECT_FALSE(s.tick());
  EXPECT_TRUE(s.handle(command::Play{}).running);
  const auto ticked = s.tick();
  ASSERT_TRUE(ticked);
  EXPECT_EQ(ticked->epoch, 1);
  const Frame paused = s.handle(command::Pause{});
  EXPECT_FALSE(paused.running);
  const Frame again = s.handle(command::Pause{});
  EXPECT_EQ(again, paused);
  EXPECT_FALSE(s.tick());
}

TEST(SessionTest, SetParamIsHot) {
  Session s("#");
  s.handle(command::Step{});
  const Frame before = s.frame();
  const Frame after = s.handle(command::SetParam{"lr", "0.1"});
  EXPECT_NE(after.state.find("&lr=0.1&"), std::string::npos);
  EXPECT_EQ(after.weights, before.weights);
  EXPECT_EQ(after.epoch, 1);
  EXPECT_EQ(s.config().learning_rate, 0.1);
}

TEST(SessionTest, ColdChangeAndResetReturnToEpochZero) {
  Session s("#");
  s.handle(command::Step{});
  s.handle(command::Play{});
  const Frame f = s.handle(command::SetParam{"act", "relu"});
  EXPECT_EQ(f.epoch, 0);
  EXPECT_TRUE(f.running);
  s.handle(command::Step{});
  const Frame r = s.handle(command::Reset{});
  EXPECT_EQ(r.epoch, 0);
  EXPECT_EQ(r.weights, Session(f.state).frame().weights);
}

TEST(SessionTest, BadInputYieldsErrorFrameAndKeepsState) {
  Session s("#");
  s.handle(command::Step{});
  const Frame before = s.frame();
  const Frame e1 = s.handle(command::SetConfig{"#lr=0.1&broken"});
  ASSERT_TRUE(e1.error);
  EXPECT_NE(e1.error->find("broken"), std::string::npos);
  const Frame e2 = s.handle(command::SetParam{"speed", "3"});
  EXPECT_TRUE(e2.error);
  const Frame e3 = s.handle(command::SetParam{"lr", "0.1&bs=3"});
  EXPECT_TRUE(e3.error);
  const Frame e4 = s.handle(command::GetFrame{1});
  EXPECT_TRUE(e4.error);
  EXPECT_EQ(s.frame(), before);
}

TEST(SessionTest, ClampNoticesTravelOnce) {
  Session s("#");
  const Frame f = s.handle(command::SetParam{"bs", "999"});
  EXPECT_FALSE(f.error);
  ASSERT_EQ(f.notices.size(), 1u);
  EXPECT_TRUE(s.frame().notices.empty());
  EXPECT_EQ(s.config().batch_size, 30);
}

TEST(SessionTest, UiPanelsEchoed) {
  Session s("#ui=loss");
  EXPECT_TRUE(s.frame().state.ends_with("&ui=loss"));
  EXPECT_TRUE(s.handle(command::SetParam{"ui", "loss,output"}).state.ends_with("&ui=loss,output"));
}

TEST(SessionTest, HeatmapsOnRequest) {
  Session s("#layers=2");
  const Frame f = s.handle(command::GetFrame{10});
  ASSERT_EQ(f.heatmaps.size(), 5u);
  EXPECT_EQ(f.heatmaps[0].first, "x1");
  EXPECT_EQ(f.heatmaps[2].first, "h1_0");
  EXPECT_EQ(f.heatmaps[4].first, "out");
  EXPECT_EQ(f.heatmaps[4].second, sample_unit(s.trainer().net, "out", 10).values);
}

TEST(SessionTest, ZeroNetHeatmapsAreZero) {
  Session s("#");
  TrainerState zeroed = s.trainer();
  for (Link& l : zeroed.net.links()) l.weight = 0.0;
  for (Node& n : zeroed.net.nodes()) n.bias = 0.0;
  const auto grids = sample_all_units(zeroed.net, 8);
  for (std::size_t u = zeroed.net.layer_begin(1); u < grids.size(); ++u)
    for (double v : grids[u].values) EXPECT_EQ(v, 0.0);
}

TEST(FrameTest, SerializedFieldOrder) {
  Session s("#");
  const std::string text = serialize_frame(s.frame());
  EXPECT_TRUE(text.starts_with("{\"epoch\":0,\"running\":false,\"state\":\"#problem=class"));
  std::size_t last = 0;
  for (const char* key : {"\"weights\":", "\"biases\":", "\"loss\":", "\"heatmaps\":", "\"data\":"}) {
    const std::size_t pos = text.find(key);
    ASSERT_NE(pos, std::string::npos) << key;
    EXPECT_GT(pos, last);
    last = pos;
  }
  EXPECT_EQ(text.find("\"error\""), std::string::npos);
}

TEST(FrameTest, RoundTrip) {
  Session s("#ds=circle&layers=3,2&ui=loss");
  s.handle(command::Step{});
  s.handle(command::Step{});
  Frame f = s.handle(command::GetFrame{6});
  EXPECT_EQ(parse_frame(serialize_frame(f)), f);
  f.error = "bad \"quote\"\n";
  f.notices = {"a", "b"};
  EXPECT_EQ(parse_frame(serialize_frame(f)), f);
}

TEST(FrameTest, LossTailIsCapped) {
  Session s("#bs=30&split=10");
  for (int i = 0; i < 205; ++i) s.handle(command::Step{});
  const Frame f = s.frame();
  ASSERT_EQ(f.loss.size(), kLossTail);
  EXPECT_EQ(f.loss.front().epoch, 6);
  EXPECT_EQ(f.loss.back().epoch, 205);
}

TEST(ProtocolTest, ParseCommands) {
  EXPECT_TRUE(std::holds_alternative<command::Play>(parse_command(R"({"cmd":"play"})")));
  EXPECT_TRUE(std::holds_alternative<command::Reset>(parse_command(R"({"cmd":"reset"})")));
  const Command p = parse_command(R"({"cmd":"set_param","key":"lr","value":0.1})");
  EXPECT_EQ(std::get<command::SetParam>(p).value, "0.1");
  const Command g = parse_command(R"({"cmd":"get_frame","heatmap_resolution":10})");
  EXPECT_EQ(std::get<command::GetFrame>(g).heatmap_resolution, 10);
  EXPECT_THROW(parse_command("not json"), ProtocolError);
  EXPECT_THROW(parse_command(R"({"cmd":"fly"})"), ProtocolError);
  EXPECT_THROW(parse_command(R"({"cmd":"set_config"})"), ProtocolError);
  const Command sc = command::SetConfig{"#lr=1"};
  EXPECT_EQ(std::get<command::SetConfig>(parse_command(serialize_command(sc))).state, "#lr=1");
}

TEST(ProtocolTest, ServeRepliesInOrder) {
  std::istringstream in(
      "{\"cmd\":\"step\"}\n"
      "{\"cmd\":\"bogus\"}\n"
      "\n"
      "{\"cmd\":\"set_param\",\"key\":\"lr\",\"value\":\"0.3\"}\n"
      "{\"cmd\":\"get_frame\",\"heatmap_resolution\":4}\n");
  std::ostringstream out;
  Session s("#");
  serve(in, out, s);
  std::istringstream lines(out.str());
  std::vector<Frame> frames;
  for (std::string line; std::getline(lines, line);) frames.push_back(parse_frame(line));
  ASSERT_EQ(frames.size(), 4u);
  EXPECT_EQ(frames[0].epoch, 1);
  EXPECT_TRUE(frames[1].error);
  EXPECT_NE(frames[2].state.find("lr=0.3"), std::string::npos);
  EXPECT_EQ(frames[3].heatmaps.size(), 9u);
}

TEST(ProtocolTest, ServeTicksWhilePlaying) {
  // The reader thread hits end-of-input right away, which ends the loop, so
  // drive a playing session through a stream that only closes later.
  struct SlowBuf : std::streambuf {
    std::string data = "{\"cmd\":\"play\"}\n";
    std::size_t pos = 0;
    int underflow() override {
      if (pos < data.size()) {
        setg(data.data() + pos, data.data() + pos, data.data() + data.size());
        pos = data.size();
        return traits_type::to_int_type(*gptr());
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(200));
      return traits_type::eof();
    }
  } buf;
  std::istream in(&buf);
  std::ostringstream out;
  Session s("#", {std::chrono::milliseconds(5)});
  serve(in, out, s);
  std::istringstream lines(out.str());
  int count = 0, last_epoch = -1;
  for (std::string line; std::getline(lines, line); ++count) {
    const Frame f = parse_frame(line);
    EXPECT_GE(f.epoch, last_epoch);
    last_epoch = f.epoch;
  }
  EXPECT_GE(count, 3);
  EXPECT_EQ(last_epoch, count - 1);
}

}  // namespace
}  // namespace playground
