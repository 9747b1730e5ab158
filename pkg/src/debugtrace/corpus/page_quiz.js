var app = getApp();
Page({
  data: {
    questions: [],
    loading: false,
    count: 0
  },
  onLoad: function (options) {
    var that = this;
    this.setData({ loading: true });
    wx.request({
      url: "https://api.example.com/quiz",
      success: function (res) {
        that.setData({ questions: res.data.items, loading: false });
      },
      fail: (err) => {
        console.log("load failed", err);
        that.setData({ loading: false });
      }
    });
  },
  refresh: function () {
    var total = 0;
    for (var i = 0; i < this.data.questions.length; i = i + 1) {
      if (this.data.questions[i].active) {
        total += 1;
      }
    }
    this.setData({ count: total });
  },
  onTap: function (e) {
    var id = e.currentTarget.dataset.id;
    if (id === null) {
      return;
    }
    wx.navigateTo({ url: "/pages/quiz/detail?id=" + id });
  }
});
