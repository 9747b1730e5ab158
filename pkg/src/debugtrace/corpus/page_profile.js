var app = getApp();
Page({
  data: {
    fields: [],
    loading: false,
    count: 0
  },
  onLoad: function (options) {
    var that = this;
    this.setData({ loading: true });
    wx.getUserInfo({
      url: "profile",
      success: function (res) {
        that.setData({ fields: res.data.items, loading: false });
      },
      fail: (err) => {
        console.log("load failed", err);
        that.setData({ loading: false });
      }
    });
  },
  refresh: function () {
    var total = 0;
    for (var i = 0; i < this.data.fields.length; i = i + 1) {
      if (this.data.fields[i].active) {
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
    wx.navigateTo({ url: "/pages/profile/detail?id=" + id });
  }
});
