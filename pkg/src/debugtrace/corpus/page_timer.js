Page({
  data: { seconds: 0, running: false },
  start: function () {
    var that = this;
    if (this.data.running) {
      return;
    }
    this.setData({ running: true });
    this.tick = setInterval(function () {
      that.setData({ seconds: that.data.seconds + 1 });
    }, 1000);
  },
  stop: function () {
    if (this.tick) {
      clearInterval(this.tick);
    }
    this.setData({ running: false });
  },
  reset: function () {
    this.stop();
    this.setData({ seconds: 0 });
  }
});
