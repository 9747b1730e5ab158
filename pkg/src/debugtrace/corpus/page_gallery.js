var app = getApp();
Page({
  data: {
    photos: [],
    loading: false,
    count: 0
  },
  onLoad: function (options) {
    var that = this;
    this.setData({ loading: true });
    wx.chooseImage({
      url: "album",
      success: function (res) {
        that.setData({ photos: res.data.items, loading: false });
      },
      fail: (err) => {
        console.log("load failed", err);
        that.setData({ loading: false });
      }
    });
  },
  refresh: function () {
    var total = 0;
    for (var i = 0; i < this.data.photos.length; i = i + 1) {
      if (this.data.photos[i].active) {
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
    wx.navigateTo({ url: "/pages/gallery/detail?id=" + id });
  }
});
